#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace posexp {

/// Dense polynomial in an outer variable t with coefficients in a ring R.
/// R must provide +, -, *, unary -, ==, is_zero(), is_one(). Because R
/// elements carry a modulus, the zero element is passed in explicitly and
/// kept as a prototype for padding.
template <class R>
class TPoly {
public:
    explicit TPoly(R zero) : zero_(std::move(zero)) {}

    TPoly(R zero, std::vector<R> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) {
        trim();
    }

    static TPoly constant(R value) {
        R zero = value - value;
        return TPoly(std::move(zero), {std::move(value)});
    }

    const R& zero_element() const noexcept { return zero_; }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    bool is_zero() const noexcept { return c_.empty(); }

    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    const R& coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }

    const R& leading() const {
        if (c_.empty())
            throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    /// Coefficients ascending, no zero leading coefficient.
    const std::vector<R>& coeffs() const noexcept { return c_; }

    TPoly& set_coeff(std::size_t i, R value) {
        if (i >= c_.size())
            c_.resize(i + 1, zero_);
        c_[i] = std::move(value);
        trim();
        return *this;
    }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        TPoly r(a.zero_);
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            r.c_.push_back(a.coeff(i) + b.coeff(i));
        r.trim();
        return r;
    }

    friend TPoly operator-(const TPoly& a, const TPoly& b) {
        TPoly r(a.zero_);
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.c_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            r.c_.push_back(a.coeff(i) - b.coeff(i));
        r.trim();
        return r;
    }

    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        TPoly r(a.zero_);
        if (a.is_zero() || b.is_zero())
            return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.zero_);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }

    TPoly operator-() const {
        TPoly r(zero_);
        r.c_.reserve(c_.size());
        for (const auto& x : c_)
            r.c_.push_back(-x);
        return r;
    }

    TPoly times(const R& s) const {
        TPoly r(zero_);
        r.c_.reserve(c_.size());
        for (const auto& x : c_)
            r.c_.push_back(x * s);
        r.trim();
        return r;
    }

    /// Multiplication by t^k.
    TPoly shifted(std::size_t k) const {
        if (is_zero())
            return *this;
        TPoly r(zero_);
        r.c_.assign(c_.size() + k, zero_);
        for (std::size_t i = 0; i < c_.size(); ++i)
            r.c_[k + i] = c_[i];
        return r;
    }

    friend bool operator==(const TPoly& a, const TPoly& b) {
        if (a.c_.size() != b.c_.size())
            return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i]))
                return false;
        return true;
    }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }

    R zero_;
    std::vector<R> c_;
};

/// Long division by a nonzero divisor whose leading coefficient is
/// invertible; R must additionally provide inv(). Returns {quotient,
/// remainder} with deg(remainder) < deg(divisor).
template <class R>
std::pair<TPoly<R>, TPoly<R>> tpoly_divmod(const TPoly<R>& a, const TPoly<R>& b) {
    if (b.is_zero())
        throw std::invalid_argument("tpoly_divmod: division by zero polynomial");
    TPoly<R> q(a.zero_element());
    TPoly<R> r = a;
    R lead_inv = b.leading().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
        R factor = r.leading() * lead_inv;
        q.set_coeff(shift, q.coeff(shift) + factor);
        r = r - b.times(factor).shifted(shift);
    }
    return {q, r};
}

template <class R>
TPoly<R> tpoly_monic(const TPoly<R>& a) {
    if (a.is_zero())
        throw std::invalid_argument("tpoly_monic: zero polynomial");
    return a.times(a.leading().inv());
}

} // namespace posexp
