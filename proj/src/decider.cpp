#include "posexp/decider.hpp"

namespace posexp {

Verdict decide_lca(const LcaRule& rule) {
    Verdict v;
    v.positively_expansive = true;
    for (const PrimePower& pp : factor(rule.modulus().value())) {
        LaMatrix reduced = rule.matrix.reduced_mod(pp.p);
        CharPoly cp = charpoly(reduced);
        ExpansivityReport report = is_expansive_poly(cp);
        bool det_nonzero = !det(reduced).is_zero();
        v.positively_expansive = v.positively_expansive && report.expansive;
        v.per_prime.push_back(PrimeBranch{pp.p, pp.k, std::move(cp), report, det_nonzero});
    }
    return v;
}

} // namespace posexp
