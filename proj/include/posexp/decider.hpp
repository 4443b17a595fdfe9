#pragma once

#include <vector>

#include "posexp/expansivity.hpp"
#include "posexp/matpoly.hpp"

namespace posexp {

/// A linear cellular automaton on (Z/mZ)^n presented by its matrix of
/// Laurent polynomials: entry (i,j) collects the dependence of output
/// coordinate i on input coordinate j, with X^-z marking the neighbour
/// at offset z.
struct LcaRule {
    LaMatrix matrix;

    Modulus modulus() const noexcept { return matrix.modulus(); }
    std::size_t dim() const noexcept { return matrix.dim(); }
    std::int64_t radius() const { return matrix.radius(); }
};

/// One prime branch of the decision: everything is reduced mod p, no
/// matter the exponent k in the factorisation of m.
struct PrimeBranch {
    std::uint64_t p = 0;
    unsigned k = 0;
    CharPoly charpoly_mod_p;
    ExpansivityReport report;
    bool det_nonzero = false;
};

struct Verdict {
    bool positively_expansive = false;
    std::vector<PrimeBranch> per_prime;
};

/// Positive expansivity of the automaton: expansivity of the reduced
/// matrix for every prime dividing the modulus.
Verdict decide_lca(const LcaRule& rule);

} // namespace posexp
