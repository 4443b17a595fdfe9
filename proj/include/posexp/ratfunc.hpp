#pragma once

#include <cstdint>
#include <stdexcept>

#include "posexp/laurent.hpp"

namespace posexp {

class DivisionByZeroError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// gcd in the Laurent ring over Z/pZ (p prime), defined up to units
/// c*X^k. Canonical representative: an ordinary polynomial in X, monic,
/// with nonzero constant term. gcd(0, 0) = 0.
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Fraction num/den of Laurent polynomials over Z/pZ, p prime. Canonical
/// form: gcd(num, den) is a unit, den is an ordinary polynomial in X that
/// is monic with nonzero constant term (so den = 1 exactly when the
/// fraction is polynomial). Monomial units are carried by num.
class RatFunc {
public:
    static RatFunc from_poly(LaurentPoly num);

    RatFunc(LaurentPoly num, LaurentPoly den);

    const LaurentPoly& num() const noexcept { return num_; }
    const LaurentPoly& den() const noexcept { return den_; }
    Modulus modulus() const noexcept { return num_.modulus(); }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const;
    RatFunc inv() const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// deg+(num) - deg+(den); undefined (throws) on the zero fraction.
    std::int64_t deg_plus() const;
    /// deg-(num) - deg-(den); undefined (throws) on the zero fraction.
    std::int64_t deg_minus() const;

private:
    struct normalized_tag {};
    RatFunc(LaurentPoly num, LaurentPoly den, normalized_tag)
        : num_(std::move(num)), den_(std::move(den)) {}

    LaurentPoly num_;
    LaurentPoly den_;
};

} // namespace posexp
