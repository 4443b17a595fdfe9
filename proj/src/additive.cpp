#include "posexp/additive.hpp"

#include <algorithm>
#include <numeric>

namespace posexp {

void GroupSpec::check() const {
    if (orders.empty())
        throw InvalidRuleError("group must have at least one cyclic factor");
    for (std::uint64_t q : orders)
        if (q < 2)
            throw InvalidRuleError("cyclic factor order must be >= 2, got " + std::to_string(q));
}

std::vector<PrimaryComponent> primary_decompose(const GroupSpec& g) {
    g.check();
    std::vector<std::uint64_t> primes;
    std::vector<std::vector<unsigned>> valuations; // per prime, per coordinate
    for (std::size_t j = 0; j < g.orders.size(); ++j) {
        for (const PrimePower& pp : factor(g.orders[j])) {
            auto it = std::find(primes.begin(), primes.end(), pp.p);
            std::size_t idx;
            if (it == primes.end()) {
                primes.push_back(pp.p);
                valuations.emplace_back(g.orders.size(), 0u);
                idx = primes.size() - 1;
            } else {
                idx = static_cast<std::size_t>(it - primes.begin());
            }
            valuations[idx][j] = pp.k;
        }
    }

    std::vector<std::size_t> order(primes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return primes[a] < primes[b]; });

    std::vector<PrimaryComponent> out;
    for (std::size_t idx : order) {
        PrimaryComponent comp;
        comp.p = primes[idx];
        // Coordinates sorted by descending exponent, stable in the
        // original coordinate order.
        std::vector<std::size_t> coords;
        for (std::size_t j = 0; j < g.orders.size(); ++j)
            if (valuations[idx][j] > 0)
                coords.push_back(j);
        std::stable_sort(coords.begin(), coords.end(), [&](std::size_t a, std::size_t b) {
            return valuations[idx][a] > valuations[idx][b];
        });
        for (std::size_t j : coords) {
            comp.coords.push_back(j);
            comp.exponents.push_back(valuations[idx][j]);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

void AdditiveRule::check_shape() const {
    group.check();
    if (radius < 0)
        throw InvalidRuleError("radius must be >= 0, got " + std::to_string(radius));
    std::size_t d = group.dim();
    for (const auto& [z, mat] : endos) {
        if (z < -radius || z > radius)
            throw InvalidRuleError("offset " + std::to_string(z) + " outside radius " +
                                   std::to_string(radius));
        if (mat.size() != d)
            throw InvalidRuleError("endomorphism at offset " + std::to_string(z) + " has " +
                                   std::to_string(mat.size()) + " rows, group has " +
                                   std::to_string(d) + " coordinates");
        for (const auto& row : mat)
            if (row.size() != d)
                throw InvalidRuleError("endomorphism at offset " + std::to_string(z) +
                                       " is not square");
    }
}

std::string EndoViolation::describe() const {
    return "entry (" + std::to_string(offset) + "," + std::to_string(row) + "," +
           std::to_string(col) + ") must be divisible by " + std::to_string(required_divisor);
}

namespace {

std::uint64_t mod_nonneg(std::int64_t v, std::uint64_t q) {
    std::int64_t m = static_cast<std::int64_t>(q);
    std::int64_t r = v % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

} // namespace

std::optional<EndoViolation> validate_rule(const AdditiveRule& rule) {
    rule.check_shape();
    const auto& q = rule.group.orders;
    for (const auto& [z, mat] : rule.endos)
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) {
                std::uint64_t required = q[i] / std::gcd(q[i], q[j]);
                if (required > 1 && mod_nonneg(mat[i][j], required) != 0)
                    return EndoViolation{z, i + 1, j + 1, required};
            }
    return std::nullopt;
}

std::vector<std::uint64_t> psi(const PrimaryComponent& comp, std::span<const std::uint64_t> h) {
    if (h.size() != comp.dim())
        throw DimensionMismatchError("psi: element has wrong number of coordinates");
    std::uint64_t m = comp.modulus();
    std::vector<std::uint64_t> out(comp.dim());
    for (std::size_t i = 0; i < comp.dim(); ++i) {
        std::uint64_t scale = pow_u64(comp.p, comp.exponents[0] - comp.exponents[i]);
        out[i] = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(h[i] % pow_u64(comp.p, comp.exponents[i])) * scale % m);
    }
    return out;
}

std::vector<std::uint64_t> project_component(const PrimaryComponent& comp, const GroupSpec& g,
                                             std::span<const std::uint64_t> element) {
    if (element.size() != g.dim())
        throw DimensionMismatchError("project_component: element has wrong dimension");
    std::vector<std::uint64_t> out(comp.dim());
    for (std::size_t i = 0; i < comp.dim(); ++i)
        out[i] = element[comp.coords[i]] % pow_u64(comp.p, comp.exponents[i]);
    return out;
}

LcaRule associated_lca(const PrimaryComponent& comp, const AdditiveRule& rule) {
    if (auto violation = validate_rule(rule))
        throw InvalidRuleError("rule is not a valid endomorphism family: " +
                               violation->describe());
    std::uint64_t m = comp.modulus();
    std::size_t s = comp.dim();
    LaMatrix a(Modulus(m), s);
    for (const auto& [z, mat] : rule.endos)
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                unsigned ki = comp.exponents[i], kj = comp.exponents[j];
                // Action of the endomorphism on the component, conjugated
                // through psi: coordinate scalings shift by p^(kj - ki).
                std::uint64_t nij = mod_nonneg(mat[comp.coords[i]][comp.coords[j]],
                                               pow_u64(comp.p, ki));
                std::uint64_t val;
                if (kj >= ki) {
                    val = static_cast<std::uint64_t>(
                        static_cast<unsigned __int128>(nij) * pow_u64(comp.p, kj - ki) % m);
                } else {
                    std::uint64_t div = pow_u64(comp.p, ki - kj);
                    if (nij % div != 0)
                        throw InvalidRuleError("component entry not divisible by required power");
                    val = nij / div;
                }
                if (val % m != 0)
                    a.at(i, j).add_term(-z, val);
            }
    return LcaRule{std::move(a)};
}

GroupConfig apply_additive(const AdditiveRule& rule, const GroupConfig& c) {
    rule.check_shape();
    const auto& q = rule.group.orders;
    std::size_t d = q.size();
    std::map<std::int64_t, GroupElement> acc;
    for (const auto& [y, h] : c.cells) {
        if (h.size() != d)
            throw DimensionMismatchError("configuration cell has wrong dimension");
        for (const auto& [z, mat] : rule.endos) {
            std::int64_t x = y - z; // cell y feeds output x with x + z = y
            auto [it, inserted] = acc.try_emplace(x, GroupElement(d, 0));
            GroupElement& out = it->second;
            for (std::size_t i = 0; i < d; ++i) {
                unsigned __int128 sum = out[i];
                for (std::size_t j = 0; j < d; ++j)
                    sum += static_cast<unsigned __int128>(mod_nonneg(mat[i][j], q[i])) *
                           (h[j] % q[i]);
                out[i] = static_cast<std::uint64_t>(sum % q[i]);
            }
        }
    }
    GroupConfig out;
    for (auto& [x, h] : acc)
        if (std::any_of(h.begin(), h.end(), [](std::uint64_t v) { return v != 0; }))
            out.cells.emplace(x, std::move(h));
    return out;
}

AdditiveVerdict decide_additive(const AdditiveRule& rule) {
    if (auto violation = validate_rule(rule))
        throw InvalidRuleError("rule is not a valid endomorphism family: " +
                               violation->describe());
    AdditiveVerdict v;
    v.positively_expansive = true;
    for (const PrimaryComponent& comp : primary_decompose(rule.group)) {
        LcaRule lca = associated_lca(comp, rule);
        Verdict verdict = decide_lca(lca);
        v.positively_expansive = v.positively_expansive && verdict.positively_expansive;
        v.components.push_back(ComponentVerdict{comp, std::move(lca), std::move(verdict)});
    }
    return v;
}

} // namespace posexp
