#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "posexp/laurent.hpp"
#include "posexp/ratfunc.hpp"
#include "posexp/tpoly.hpp"

namespace posexp {

class DimensionMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Square matrix with Laurent-polynomial entries over a common Z/mZ.
class LaMatrix {
public:
    LaMatrix(Modulus m, std::size_t n)
        : m_(m), n_(n), e_(n * n, LaurentPoly(m)) {
        if (n == 0)
            throw DimensionMismatchError("matrix dimension must be >= 1");
    }

    static LaMatrix identity(Modulus m, std::size_t n) {
        LaMatrix a(m, n);
        for (std::size_t i = 0; i < n; ++i)
            a.at(i, i) = LaurentPoly::one(m);
        return a;
    }

    std::size_t dim() const noexcept { return n_; }
    Modulus modulus() const noexcept { return m_; }

    LaurentPoly& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const LaurentPoly& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    LaMatrix transpose() const;

    /// Largest |degree| over all entry terms; 0 for the zero matrix.
    std::int64_t radius() const;

    bool is_zero() const;

    std::vector<LaurentPoly> apply(std::span<const LaurentPoly> v) const;

    friend LaMatrix operator*(const LaMatrix& a, const LaMatrix& b);
    friend LaMatrix operator+(const LaMatrix& a, const LaMatrix& b);

    LaMatrix reduced_mod(std::uint64_t q) const;

    friend bool operator==(const LaMatrix& a, const LaMatrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator!=(const LaMatrix& a, const LaMatrix& b) { return !(a == b); }

private:
    Modulus m_;
    std::size_t n_;
    std::vector<LaurentPoly> e_;
};

using CharPoly = TPoly<LaurentPoly>;

/// Characteristic polynomial det(tI - A), computed division-free
/// (Berkowitz), so valid over Z/mZ with zero divisors. Monic of degree
/// dim(A).
CharPoly charpoly(const LaMatrix& a);

/// Determinant, read off the constant coefficient of the characteristic
/// polynomial.
LaurentPoly det(const LaMatrix& a);

/// Invariant factors of tI - A over the fraction field of the Laurent
/// ring, prime modulus required. Factors are monic, of degree >= 1 in t,
/// each dividing the next, with product equal to the characteristic
/// polynomial; constant factors are dropped.
std::vector<TPoly<RatFunc>> invariant_factors(const LaMatrix& a);

/// Clears the (trivial) denominators of an invariant factor; throws if a
/// coefficient is not polynomial.
TPoly<LaurentPoly> factor_as_laurent(const TPoly<RatFunc>& f);

} // namespace posexp
