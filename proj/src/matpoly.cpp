#include "posexp/matpoly.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace posexp {

LaMatrix LaMatrix::transpose() const {
    LaMatrix t(m_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

std::int64_t LaMatrix::radius() const {
    std::int64_t r = 0;
    for (const auto& e : e_)
        for (const auto& [d, c] : e.terms())
            r = std::max(r, d >= 0 ? d : -d);
    return r;
}

bool LaMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

std::vector<LaurentPoly> LaMatrix::apply(std::span<const LaurentPoly> v) const {
    if (v.size() != n_)
        throw DimensionMismatchError("matrix-vector dimension mismatch: " +
                                     std::to_string(n_) + " vs " + std::to_string(v.size()));
    std::vector<LaurentPoly> out(n_, LaurentPoly(m_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            out[i] = out[i] + at(i, j) * v[j];
    return out;
}

LaMatrix operator*(const LaMatrix& a, const LaMatrix& b) {
    if (a.n_ != b.n_)
        throw DimensionMismatchError("matrix product dimension mismatch");
    LaMatrix r(a.m_, a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t k = 0; k < a.n_; ++k)
            for (std::size_t j = 0; j < a.n_; ++j)
                r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
    return r;
}

LaMatrix operator+(const LaMatrix& a, const LaMatrix& b) {
    if (a.n_ != b.n_)
        throw DimensionMismatchError("matrix sum dimension mismatch");
    LaMatrix r(a.m_, a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t j = 0; j < a.n_; ++j)
            r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

LaMatrix LaMatrix::reduced_mod(std::uint64_t q) const {
    LaMatrix r(Modulus(q), n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r.at(i, j) = at(i, j).reduced_mod(q);
    return r;
}

CharPoly charpoly(const LaMatrix& a) {
    Modulus m = a.modulus();
    std::size_t n = a.dim();
    LaurentPoly zero(m);

    // Berkowitz iteration: v holds the characteristic polynomial of the
    // leading principal r x r block, coefficients descending from t^r.
    std::vector<LaurentPoly> v{LaurentPoly::one(m), -a.at(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // q[i] = row_r . block^(i-1) . col_r for i >= 1, q[0] = a(r,r),
        // where block is the leading r x r submatrix.
        std::vector<LaurentPoly> q;
        q.reserve(r + 1);
        q.push_back(a.at(r, r));
        std::vector<LaurentPoly> w;
        w.reserve(r);
        for (std::size_t i = 0; i < r; ++i)
            w.push_back(a.at(i, r));
        for (std::size_t i = 1; i <= r; ++i) {
            LaurentPoly dot(m);
            for (std::size_t j = 0; j < r; ++j)
                dot = dot + a.at(r, j) * w[j];
            q.push_back(std::move(dot));
            if (i < r) {
                std::vector<LaurentPoly> nw;
                nw.reserve(r);
                for (std::size_t ii = 0; ii < r; ++ii) {
                    LaurentPoly s(m);
                    for (std::size_t jj = 0; jj < r; ++jj)
                        s = s + a.at(ii, jj) * w[jj];
                    nw.push_back(std::move(s));
                }
                w = std::move(nw);
            }
        }
        // Multiply v by the lower-triangular Toeplitz matrix with first
        // column (1, -q[0], -q[1], ...).
        std::vector<LaurentPoly> nv(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i) {
            LaurentPoly s(m);
            for (std::size_t j = 0; j <= i && j < r + 1; ++j) {
                std::size_t k = i - j;
                if (k == 0)
                    s = s + v[j];
                else
                    s = s - q[k - 1] * v[j];
            }
            nv[i] = std::move(s);
        }
        v = std::move(nv);
    }
    std::vector<LaurentPoly> ascending(v.rbegin(), v.rend());
    return CharPoly(zero, std::move(ascending));
}

LaurentPoly det(const LaMatrix& a) {
    LaurentPoly c0 = charpoly(a).coeff(0);
    return a.dim() % 2 == 0 ? c0 : -c0;
}

namespace {

using FPoly = TPoly<RatFunc>;
using FMat = std::vector<std::vector<FPoly>>;

// Least common multiple of denominators across a row; an element of the
// coefficient field, so scaling the row by it is a unit operation.
LaurentPoly row_denominator_lcm(const std::vector<FPoly>& row, Modulus m) {
    LaurentPoly l = LaurentPoly::one(m);
    for (const auto& entry : row)
        for (const auto& c : entry.coeffs()) {
            if (c.den().is_one())
                continue;
            LaurentPoly g = laurent_gcd(l, c.den());
            l = RatFunc(l * c.den(), g).num();
        }
    return l;
}

void scale_row(std::vector<FPoly>& row, const RatFunc& s) {
    for (auto& entry : row)
        entry = entry.times(s);
}

} // namespace

std::vector<TPoly<RatFunc>> invariant_factors(const LaMatrix& a) {
    Modulus m = a.modulus();
    std::size_t n = a.dim();
    RatFunc zero = RatFunc::from_poly(LaurentPoly(m));
    RatFunc one = RatFunc::from_poly(LaurentPoly::one(m));
    FPoly pzero(zero);

    // s = tI - A over the fraction field.
    FMat s(n, std::vector<FPoly>(n, pzero));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            FPoly e(zero, {RatFunc::from_poly(-a.at(i, j))});
            if (i == j)
                e.set_coeff(1, one);
            s[i][j] = std::move(e);
        }

    std::vector<FPoly> diagonal;
    for (std::size_t k = 0; k < n; ++k) {
        // Pivot: nonzero entry of minimal t-degree in the active block.
        auto find_pivot = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            int best_deg = 0;
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = k; j < n; ++j)
                    if (!s[i][j].is_zero() && (!best || s[i][j].degree() < best_deg)) {
                        best = {{i, j}};
                        best_deg = s[i][j].degree();
                    }
            return best;
        };

        auto pivot = find_pivot();
        if (!pivot)
            break;
        for (;;) {
            std::swap(s[k], s[pivot->first]);
            if (pivot->second != k)
                for (std::size_t i = 0; i < n; ++i)
                    std::swap(s[i][k], s[i][pivot->second]);

            bool changed = false;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (s[i][k].is_zero())
                    continue;
                auto [q, rem] = tpoly_divmod(s[i][k], s[k][k]);
                for (std::size_t j = k; j < n; ++j)
                    s[i][j] = s[i][j] - q * s[k][j];
                if (!rem.is_zero())
                    changed = true;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (s[k][j].is_zero())
                    continue;
                auto [q, rem] = tpoly_divmod(s[k][j], s[k][k]);
                for (std::size_t i = k; i < n; ++i)
                    s[i][j] = s[i][j] - q * s[i][k];
                if (!rem.is_zero())
                    changed = true;
            }
            for (std::size_t i = k; i < n; ++i) {
                LaurentPoly l = row_denominator_lcm(s[i], m);
                if (!l.is_one())
                    scale_row(s[i], RatFunc::from_poly(l));
            }
            if (changed) {
                pivot = find_pivot();
                continue;
            }
            // Row and column k are clear; enforce that the pivot divides
            // the rest of the block.
            bool fixed_up = false;
            for (std::size_t i = k + 1; i < n && !fixed_up; ++i)
                for (std::size_t j = k + 1; j < n && !fixed_up; ++j) {
                    if (s[i][j].is_zero())
                        continue;
                    auto [q, rem] = tpoly_divmod(s[i][j], s[k][k]);
                    if (!rem.is_zero()) {
                        for (std::size_t jj = k; jj < n; ++jj)
                            s[k][jj] = s[k][jj] + s[i][jj];
                        fixed_up = true;
                    }
                }
            if (!fixed_up)
                break;
            pivot = find_pivot();
        }
        diagonal.push_back(s[k][k]);
    }

    std::vector<FPoly> factors;
    for (const auto& d : diagonal) {
        FPoly monic = tpoly_monic(d);
        if (monic.degree() >= 1)
            factors.push_back(std::move(monic));
    }
    return factors;
}

TPoly<LaurentPoly> factor_as_laurent(const TPoly<RatFunc>& f) {
    Modulus m = f.zero_element().modulus();
    TPoly<LaurentPoly> out((LaurentPoly(m)));
    for (int i = 0; i <= f.degree(); ++i) {
        const RatFunc& c = f.coeff(static_cast<std::size_t>(i));
        if (!c.is_polynomial())
            throw std::logic_error("invariant factor coefficient has a nontrivial denominator: " +
                                   to_string(c.num()) + " / " + to_string(c.den()));
        out.set_coeff(static_cast<std::size_t>(i), c.num());
    }
    return out;
}

} // namespace posexp
