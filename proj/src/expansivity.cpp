#include "posexp/expansivity.hpp"

namespace posexp {

std::string ExpansivityReport::describe() const {
    if (expansive)
        return "expansive: deg+(a0) = " + deg_plus_a0.to_string() +
               " > 0 and dominant, deg-(a0) = " + deg_minus_a0.to_string() +
               " < 0 and dominated";
    switch (violated) {
    case ExpansivityClause::constant_term_zero:
        return "not expansive: constant coefficient a0 is zero";
    case ExpansivityClause::pos_degree_not_positive:
        return "not expansive: deg+(a0) = " + deg_plus_a0.to_string() + " is not > 0";
    case ExpansivityClause::pos_degree_not_dominant:
        return "not expansive: deg+(a" + std::to_string(index) +
               ") >= deg+(a0) = " + deg_plus_a0.to_string();
    case ExpansivityClause::neg_degree_not_negative:
        return "not expansive: deg-(a0) = " + deg_minus_a0.to_string() + " is not < 0";
    case ExpansivityClause::neg_degree_not_dominated:
        return "not expansive: deg-(a" + std::to_string(index) +
               ") <= deg-(a0) = " + deg_minus_a0.to_string();
    default:
        return "not expansive";
    }
}

ExpansivityReport is_expansive_poly(const TPoly<LaurentPoly>& pi) {
    if (!pi.is_monic())
        throw NonMonicError("expansivity test requires a monic polynomial");
    std::size_t n = static_cast<std::size_t>(pi.degree());

    ExpansivityReport r;
    const LaurentPoly& a0 = pi.coeff(0);
    r.deg_plus_a0 = a0.deg_plus();
    r.deg_minus_a0 = a0.deg_minus();

    if (a0.is_zero()) {
        r.violated = ExpansivityClause::constant_term_zero;
        return r;
    }
    if (!(r.deg_plus_a0 > ExtDegree(0))) {
        r.violated = ExpansivityClause::pos_degree_not_positive;
        return r;
    }
    for (std::size_t i = 1; i < n; ++i)
        if (!(r.deg_plus_a0 > pi.coeff(i).deg_plus())) {
            r.violated = ExpansivityClause::pos_degree_not_dominant;
            r.index = i;
            return r;
        }
    if (!(r.deg_minus_a0 < ExtDegree(0))) {
        r.violated = ExpansivityClause::neg_degree_not_negative;
        return r;
    }
    for (std::size_t i = 1; i < n; ++i)
        if (!(r.deg_minus_a0 < pi.coeff(i).deg_minus())) {
            r.violated = ExpansivityClause::neg_degree_not_dominated;
            r.index = i;
            return r;
        }
    r.expansive = true;
    return r;
}

ExpansivityReport is_expansive_matrix(const LaMatrix& a) {
    return is_expansive_poly(charpoly(a));
}

} // namespace posexp
