#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "posexp/modarith.hpp"

namespace posexp {

/// Degree value extended with -infinity (for deg+ of 0) and +infinity
/// (for deg- of 0). Addition of opposite infinities is rejected.
class ExtDegree {
public:
    static ExtDegree neg_infinity() { return ExtDegree(State::neg_inf, 0); }
    static ExtDegree pos_infinity() { return ExtDegree(State::pos_inf, 0); }
    ExtDegree(std::int64_t v) : state_(State::finite), v_(v) {}

    bool is_finite() const noexcept { return state_ == State::finite; }
    bool is_neg_infinity() const noexcept { return state_ == State::neg_inf; }
    bool is_pos_infinity() const noexcept { return state_ == State::pos_inf; }

    std::int64_t finite_value() const {
        if (!is_finite())
            throw std::logic_error("ExtDegree: no finite value in " + to_string());
        return v_;
    }

    friend bool operator==(ExtDegree a, ExtDegree b) noexcept {
        return a.state_ == b.state_ && (a.state_ != State::finite || a.v_ == b.v_);
    }
    friend bool operator!=(ExtDegree a, ExtDegree b) noexcept { return !(a == b); }
    friend bool operator<(ExtDegree a, ExtDegree b) noexcept {
        if (a.state_ != b.state_)
            return rank(a.state_) < rank(b.state_);
        return a.state_ == State::finite && a.v_ < b.v_;
    }
    friend bool operator>(ExtDegree a, ExtDegree b) noexcept { return b < a; }
    friend bool operator<=(ExtDegree a, ExtDegree b) noexcept { return !(b < a); }
    friend bool operator>=(ExtDegree a, ExtDegree b) noexcept { return !(a < b); }

    friend ExtDegree operator+(ExtDegree a, ExtDegree b) {
        if (a.is_finite() && b.is_finite())
            return ExtDegree(a.v_ + b.v_);
        if ((a.is_neg_infinity() && b.is_pos_infinity()) ||
            (a.is_pos_infinity() && b.is_neg_infinity()))
            throw std::logic_error("ExtDegree: -inf + +inf is undefined");
        return a.is_finite() ? b : a;
    }

    std::string to_string() const {
        switch (state_) {
        case State::neg_inf: return "-inf";
        case State::pos_inf: return "+inf";
        default: return std::to_string(v_);
        }
    }

private:
    enum class State { neg_inf, finite, pos_inf };
    ExtDegree(State s, std::int64_t v) : state_(s), v_(v) {}
    static int rank(State s) noexcept {
        return s == State::neg_inf ? 0 : s == State::finite ? 1 : 2;
    }

    State state_;
    std::int64_t v_;
};

/// Laurent polynomial over Z/mZ: finitely many terms c*X^d with d any
/// integer. Canonical form: sorted by degree, no zero coefficients,
/// coefficients in [0, m).
class LaurentPoly {
public:
    explicit LaurentPoly(Modulus m) : m_(m) {}

    static LaurentPoly constant(Residue c) {
        LaurentPoly p(c.modulus());
        p.add_term(0, c.value());
        return p;
    }

    static LaurentPoly monomial(Modulus m, std::uint64_t coeff, std::int64_t degree) {
        LaurentPoly p(m);
        p.add_term(degree, coeff);
        return p;
    }

    static LaurentPoly one(Modulus m) { return monomial(m, 1, 0); }

    Modulus modulus() const noexcept { return m_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
    }

    std::uint64_t coeff(std::int64_t degree) const {
        auto it = terms_.find(degree);
        return it == terms_.end() ? 0 : it->second;
    }

    /// Sparse canonical view, ascending degree.
    const std::map<std::int64_t, std::uint64_t>& terms() const noexcept { return terms_; }

    ExtDegree deg_plus() const {
        return terms_.empty() ? ExtDegree::neg_infinity() : ExtDegree(terms_.rbegin()->first);
    }

    ExtDegree deg_minus() const {
        return terms_.empty() ? ExtDegree::pos_infinity() : ExtDegree(terms_.begin()->first);
    }

    /// Adds c*X^degree, reducing mod m and erasing cancelled terms.
    LaurentPoly& add_term(std::int64_t degree, std::uint64_t c);

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly operator-() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        check_same(a, b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly times_scalar(std::uint64_t c) const;

    /// Multiplication by X^k.
    LaurentPoly shifted(std::int64_t k) const;

    /// Coefficientwise reduction into Z/qZ.
    LaurentPoly reduced_mod(std::uint64_t q) const;

private:
    static void check_same(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.m_ != b.m_)
            throw ModulusMismatchError("Laurent operands have different moduli: " +
                                       std::to_string(a.m_.value()) + " vs " +
                                       std::to_string(b.m_.value()));
    }

    Modulus m_;
    std::map<std::int64_t, std::uint64_t> terms_;
};

class LaurentParseError : public std::invalid_argument {
public:
    LaurentParseError(std::string msg, std::size_t position)
        : std::invalid_argument(std::move(msg)), position_(position) {}

    /// Byte offset into the parsed text where the problem was found.
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Grammar: poly := term (('+'|'-') term)*, term := coeff | [coeff] 'X'
/// ['^' int], coeff a nonnegative integer, whitespace insignificant.
/// Repeated degrees accumulate, e.g. "X + X" over Z/2Z parses to 0.
LaurentPoly parse_laurent(std::string_view text, Modulus m);

/// Canonical rendering: ascending degree, " + " between terms, unit
/// coefficients on X terms omitted, "0" for the zero polynomial.
/// parse_laurent(to_string(p), m) == p for every p.
std::string to_string(const LaurentPoly& p);

} // namespace posexp
