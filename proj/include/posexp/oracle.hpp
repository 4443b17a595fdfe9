#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "posexp/decider.hpp"

namespace posexp {

/// Finitely supported configuration of (Z/mZ)^n over the integer line;
/// only nonzero columns are stored.
struct FiniteConfig {
    Modulus mod;
    std::size_t n = 0;
    std::map<std::int64_t, std::vector<std::uint64_t>> cols;

    /// Drops all-zero columns and reduces values mod m.
    void normalize();
    bool is_zero() const noexcept { return cols.empty(); }
    ExtDegree deg_plus() const {
        return cols.empty() ? ExtDegree::neg_infinity() : ExtDegree(cols.rbegin()->first);
    }
    ExtDegree deg_minus() const {
        return cols.empty() ? ExtDegree::pos_infinity() : ExtDegree(cols.begin()->first);
    }
    /// Mirror image: column at q moves to -q.
    FiniteConfig reflected() const;

    friend bool operator==(const FiniteConfig& a, const FiniteConfig& b) {
        return a.mod == b.mod && a.n == b.n && a.cols == b.cols;
    }
};

/// One CA step: output column q collects A_z applied to input column
/// q + z for every offset z of the rule.
FiniteConfig step(const LcaRule& rule, const FiniteConfig& c);

/// Laurent encoding of a configuration, one polynomial per coordinate.
std::vector<LaurentPoly> config_to_polys(const FiniteConfig& c);
FiniteConfig polys_to_config(Modulus m, const std::vector<LaurentPoly>& polys);

struct OracleOptions {
    bool parallel = true;
    std::uint64_t seed = 0;
    /// Beyond this many initial windows, falsification samples instead of
    /// enumerating, and verification gives up as inconclusive.
    std::uint64_t enum_cap = 1'000'000;
};

struct VerifyResult {
    bool verified = false;
    /// On success, the first window level at which both sides grew.
    unsigned lhat = 0;
    /// On failure, the level budget that was exhausted.
    unsigned budget = 0;
};

struct FalsifyWitness {
    FiniteConfig config;
    unsigned steps = 0;
};

struct FalsifyResult {
    std::optional<FalsifyWitness> left;
    std::optional<FalsifyWitness> right;
    unsigned width = 0;
    unsigned steps = 0;
    /// Whether every candidate window was tried (vs. seeded sampling).
    bool exhaustive_left = false;
    bool exhaustive_right = false;

    bool refuted() const noexcept { return left.has_value() || right.has_value(); }
};

/// Exact bounded verification of positive expansivity. For each level
/// lhat = 1..lhat_max it enumerates every window of width lhat*r + 1
/// whose outermost column is nonzero and checks that lhat steps push some
/// nonzero value past the origin, on both sides. Positions beyond the
/// origin after at most lhat steps depend only on the window columns, so
/// a fully passing level is a proof; exhausting the budget proves
/// nothing.
VerifyResult verify_window(const LcaRule& rule, unsigned lhat_max,
                           const OracleOptions& opts = {});

/// Bounded search for a refuting orbit: a window of width at most
/// `width` whose iterates never cross the origin for `steps` steps on
/// one side. A hit is strong evidence against expansivity, not a proof.
/// Enumeration is exhaustive up to opts.enum_cap candidates per side,
/// seeded sampling beyond; ties break toward the lexicographically
/// smallest window.
FalsifyResult falsify(const LcaRule& rule, unsigned width, unsigned steps,
                      const OracleOptions& opts = {});

} // namespace posexp
