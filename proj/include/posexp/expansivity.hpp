#pragma once

#include <cstddef>
#include <string>

#include "posexp/matpoly.hpp"

namespace posexp {

class NonMonicError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Clauses of the expansivity test for a monic polynomial
/// a0 + a1 t + ... + t^n over the Laurent ring, checked in this order:
///   1. a0 != 0
///   2. deg+(a0) > 0
///   3. deg+(a0) > deg+(ai) for 0 < i < n
///   4. deg-(a0) < 0
///   5. deg-(a0) < deg-(ai) for 0 < i < n
enum class ExpansivityClause {
    none,
    constant_term_zero,
    pos_degree_not_positive,
    pos_degree_not_dominant,
    neg_degree_not_negative,
    neg_degree_not_dominated,
};

struct ExpansivityReport {
    bool expansive = false;
    ExpansivityClause violated = ExpansivityClause::none;
    /// Coefficient index witnessing a dominance violation (clauses 3/5),
    /// zero otherwise.
    std::size_t index = 0;
    ExtDegree deg_plus_a0 = ExtDegree::neg_infinity();
    ExtDegree deg_minus_a0 = ExtDegree::pos_infinity();

    std::string describe() const;
};

/// Expansivity of a monic polynomial in t with Laurent coefficients;
/// throws NonMonicError when the leading coefficient is not 1. For
/// degree 1 the dominance clauses are vacuous.
ExpansivityReport is_expansive_poly(const TPoly<LaurentPoly>& pi);

/// A matrix is expansive exactly when its characteristic polynomial is.
ExpansivityReport is_expansive_matrix(const LaMatrix& a);

} // namespace posexp
