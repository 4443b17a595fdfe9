#include "posexp/ratfunc.hpp"

#include <utility>
#include <vector>

namespace posexp {

namespace {

// Dense ordinary polynomial over Z/pZ, ascending coefficients, no high
// zeros; empty vector is the zero polynomial.
using Dense = std::vector<std::uint64_t>;

void trim(Dense& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1)
        throw DivisionByZeroError("element not invertible mod " + std::to_string(p));
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

// Writes a as X^shift * (ordinary polynomial with nonzero constant term).
Dense to_dense(const LaurentPoly& a, std::int64_t& shift) {
    shift = a.deg_minus().finite_value();
    std::size_t size = static_cast<std::size_t>(a.deg_plus().finite_value() - shift) + 1;
    Dense d(size, 0);
    for (const auto& [deg, c] : a.terms())
        d[static_cast<std::size_t>(deg - shift)] = c;
    return d;
}

LaurentPoly from_dense(Modulus m, const Dense& d, std::int64_t shift) {
    LaurentPoly p(m);
    for (std::size_t i = 0; i < d.size(); ++i)
        p.add_term(shift + static_cast<std::int64_t>(i), d[i]);
    return p;
}

Dense make_monic(Dense a, std::uint64_t p) {
    trim(a);
    if (a.empty())
        return a;
    std::uint64_t s = inv_mod(a.back(), p);
    for (auto& c : a)
        c = mul_mod(c, s, p);
    return a;
}

// Euclidean division; returns the quotient and reduces a to the remainder.
Dense divmod(Dense& a, const Dense& b, std::uint64_t p) {
    Dense q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        std::uint64_t factor = mul_mod(a.back(), lead_inv, p);
        std::size_t off = a.size() - b.size();
        if (factor != 0) {
            q[off] = factor;
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = mul_mod(factor, b[i], p);
                std::uint64_t& tgt = a[off + i];
                tgt = tgt >= sub ? tgt - sub : tgt + p - sub;
            }
        }
        a.pop_back();
        trim(a);
    }
    trim(q);
    return q;
}

Dense dense_gcd(Dense a, Dense b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        divmod(a, b, p);
        std::swap(a, b);
    }
    return make_monic(std::move(a), p);
}

Dense exact_div(Dense a, const Dense& b, std::uint64_t p) {
    Dense q = divmod(a, b, p);
    if (!a.empty())
        throw std::logic_error("exact_div: division was not exact");
    return q;
}

void require_prime_modulus(Modulus m) {
    if (!is_prime(m.value()))
        throw InvalidModulusError("fraction field requires a prime modulus, got " +
                                  std::to_string(m.value()));
}

} // namespace

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.modulus() != b.modulus())
        throw ModulusMismatchError("laurent_gcd operands have different moduli");
    require_prime_modulus(a.modulus());
    std::uint64_t p = a.modulus().value();
    if (a.is_zero() && b.is_zero())
        return LaurentPoly(a.modulus());
    std::int64_t sa = 0, sb = 0;
    Dense da = a.is_zero() ? Dense{} : to_dense(a, sa);
    Dense db = b.is_zero() ? Dense{} : to_dense(b, sb);
    Dense g = da.empty() ? make_monic(std::move(db), p)
            : db.empty() ? make_monic(std::move(da), p)
                         : dense_gcd(std::move(da), std::move(db), p);
    return from_dense(a.modulus(), g, 0);
}

RatFunc RatFunc::from_poly(LaurentPoly num) {
    Modulus m = num.modulus();
    return RatFunc(std::move(num), LaurentPoly::one(m));
}

RatFunc::RatFunc(LaurentPoly num, LaurentPoly den)
    : num_(num.modulus()), den_(den.modulus()) {
    if (num.modulus() != den.modulus())
        throw ModulusMismatchError("fraction numerator/denominator moduli differ");
    require_prime_modulus(num.modulus());
    if (den.is_zero())
        throw DivisionByZeroError("fraction with zero denominator");
    Modulus m = num.modulus();
    if (num.is_zero()) {
        num_ = LaurentPoly(m);
        den_ = LaurentPoly::one(m);
        return;
    }
    std::uint64_t p = m.value();
    std::int64_t sn = 0, sd = 0;
    Dense dn = to_dense(num, sn);
    Dense dd = to_dense(den, sd);
    Dense g = dense_gcd(dn, dd, p);
    if (g.size() > 1) {
        dn = exact_div(std::move(dn), g, p);
        dd = exact_div(std::move(dd), g, p);
    }
    // Make the denominator monic; the scaling unit moves into the numerator.
    std::uint64_t s = inv_mod(dd.back(), p);
    for (auto& c : dd)
        c = mul_mod(c, s, p);
    for (auto& c : dn)
        c = mul_mod(c, s, p);
    num_ = from_dense(m, dn, sn - sd);
    den_ = from_dense(m, dd, 0);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero())
        throw DivisionByZeroError("division by zero fraction");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator-() const {
    return RatFunc(-num_, den_, normalized_tag{});
}

RatFunc RatFunc::inv() const {
    if (is_zero())
        throw DivisionByZeroError("inverse of zero fraction");
    return RatFunc(den_, num_);
}

std::int64_t RatFunc::deg_plus() const {
    if (is_zero())
        throw std::domain_error("degree of the zero fraction is undefined");
    return num_.deg_plus().finite_value() - den_.deg_plus().finite_value();
}

std::int64_t RatFunc::deg_minus() const {
    if (is_zero())
        throw std::domain_error("degree of the zero fraction is undefined");
    return num_.deg_minus().finite_value() - den_.deg_minus().finite_value();
}

} // namespace posexp
