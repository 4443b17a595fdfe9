#include "posexp/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <stdexcept>

namespace posexp {

void FiniteConfig::normalize() {
    std::uint64_t m = mod.value();
    for (auto it = cols.begin(); it != cols.end();) {
        bool nonzero = false;
        if (it->second.size() != n)
            throw DimensionMismatchError("configuration column has wrong dimension");
        for (auto& v : it->second) {
            v %= m;
            nonzero = nonzero || v != 0;
        }
        it = nonzero ? std::next(it) : cols.erase(it);
    }
}

FiniteConfig FiniteConfig::reflected() const {
    FiniteConfig r{mod, n, {}};
    for (const auto& [q, col] : cols)
        r.cols.emplace(-q, col);
    return r;
}

std::vector<LaurentPoly> config_to_polys(const FiniteConfig& c) {
    std::vector<LaurentPoly> out(c.n, LaurentPoly(c.mod));
    for (const auto& [q, col] : c.cols)
        for (std::size_t i = 0; i < c.n; ++i)
            out[i].add_term(q, col[i]);
    return out;
}

FiniteConfig polys_to_config(Modulus m, const std::vector<LaurentPoly>& polys) {
    FiniteConfig c{m, polys.size(), {}};
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].modulus() != m)
            throw ModulusMismatchError("configuration polynomials over mixed moduli");
        for (const auto& [d, v] : polys[i].terms()) {
            auto [it, inserted] = c.cols.try_emplace(d, std::vector<std::uint64_t>(polys.size(), 0));
            it->second[i] = v;
        }
    }
    return c;
}

namespace {

// Constant matrices of the rule, indexed by neighbour offset: the term
// c*X^d of matrix entry (i,j) is the coefficient of input offset z = -d.
struct Kernel {
    std::uint64_t m = 0;
    std::size_t n = 0;
    std::int64_t r = 0;
    std::vector<std::uint64_t> coef; // (2r+1) * n * n, offset-major

    std::uint64_t at(std::int64_t z, std::size_t i, std::size_t j) const {
        return coef[static_cast<std::size_t>(z + r) * n * n + i * n + j];
    }
};

Kernel make_kernel(const LcaRule& rule) {
    Kernel k;
    k.m = rule.modulus().value();
    k.n = rule.dim();
    k.r = rule.radius();
    k.coef.assign(static_cast<std::size_t>(2 * k.r + 1) * k.n * k.n, 0);
    for (std::size_t i = 0; i < k.n; ++i)
        for (std::size_t j = 0; j < k.n; ++j)
            for (const auto& [d, c] : rule.matrix.at(i, j).terms())
                k.coef[static_cast<std::size_t>(-d + k.r) * k.n * k.n + i * k.n + j] = c;
    return k;
}

Kernel reflect(const Kernel& k) {
    Kernel out = k;
    for (std::int64_t z = -k.r; z <= k.r; ++z)
        for (std::size_t i = 0; i < k.n; ++i)
            for (std::size_t j = 0; j < k.n; ++j)
                out.coef[static_cast<std::size_t>(z + k.r) * k.n * k.n + i * k.n + j] =
                    k.at(-z, i, j);
    return out;
}

unsigned __int128 ipow128(std::uint64_t base, std::size_t exp, unsigned __int128 cap) {
    unsigned __int128 r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
        if (r > cap)
            return cap + 1;
    }
    return r;
}

// Scratch buffers reused across window simulations; position-major, n
// values per position, covering [flo, flo + len).
struct Work {
    std::vector<std::uint64_t> cur, nxt;
    std::vector<std::uint64_t> digits;
};

// One synchronous step restricted to output range [outlo, outhi], with
// inputs known to vanish outside [inlo, inhi]. Positions are rebased by
// flo into the buffers.
void step_range(const Kernel& k, const std::vector<std::uint64_t>& cur,
                std::vector<std::uint64_t>& nxt, std::int64_t flo, std::int64_t outlo,
                std::int64_t outhi, std::int64_t inlo, std::int64_t inhi) {
    const std::size_t n = k.n;
    std::vector<unsigned __int128> accv(n > 8 ? n : 0);
    for (std::int64_t q = outlo; q <= outhi; ++q) {
        std::uint64_t* out = &nxt[static_cast<std::size_t>(q - flo) * n];
        unsigned __int128 acc[8] = {};
        unsigned __int128* accp = acc;
        if (n > 8) {
            std::fill(accv.begin(), accv.end(), 0);
            accp = accv.data();
        }
        for (std::int64_t z = -k.r; z <= k.r; ++z) {
            std::int64_t pos = q + z;
            if (pos < inlo || pos > inhi)
                continue;
            const std::uint64_t* in = &cur[static_cast<std::size_t>(pos - flo) * n];
            const std::uint64_t* a = &k.coef[static_cast<std::size_t>(z + k.r) * n * n];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    accp[i] += static_cast<unsigned __int128>(a[i * n + j]) * in[j];
        }
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<std::uint64_t>(accp[i] % k.m);
    }
}

// Simulates the window given by `digits` (column at position -t is
// digits[t], base m per coordinate) and reports whether any iterate
// within `steps` steps has a nonzero value at a position >= 1.
bool crosses_origin(const Kernel& k, const std::uint64_t* digits, unsigned width, unsigned steps,
                    Work& w) {
    const std::size_t n = k.n;
    const std::int64_t r = k.r;
    const std::int64_t flo =
        -static_cast<std::int64_t>(width - 1) - static_cast<std::int64_t>(steps) * r;
    const std::int64_t fhi = static_cast<std::int64_t>(steps) * r;
    const std::size_t len = static_cast<std::size_t>(fhi - flo + 1) * n;
    if (w.cur.size() < len) {
        w.cur.resize(len);
        w.nxt.resize(len);
    }
    for (unsigned t = 0; t < width; ++t) {
        std::uint64_t d = digits[t];
        std::size_t base = static_cast<std::size_t>(-static_cast<std::int64_t>(t) - flo) * n;
        for (std::size_t i = 0; i < n; ++i) {
            w.cur[base + i] = d % k.m;
            d /= k.m;
        }
    }
    std::int64_t curlo = -static_cast<std::int64_t>(width - 1), curhi = 0;
    for (unsigned l = 1; l <= steps; ++l) {
        std::int64_t outlo = curlo - r, outhi = curhi + r;
        step_range(k, w.cur, w.nxt, flo, outlo, outhi, curlo, curhi);
        std::swap(w.cur, w.nxt);
        curlo = outlo;
        curhi = outhi;
        for (std::int64_t q = 1; q <= curhi; ++q) {
            const std::uint64_t* col = &w.cur[static_cast<std::size_t>(q - flo) * n];
            for (std::size_t i = 0; i < n; ++i)
                if (col[i] != 0)
                    return true;
        }
    }
    return false;
}

void decode_digits(std::uint64_t idx, std::uint64_t s, unsigned width, std::uint64_t* digits) {
    for (unsigned t = width; t-- > 1;) {
        digits[t] = idx % s;
        idx /= s;
    }
    digits[0] = idx + 1;
}

// Number of column states m^n and window count (s-1)*s^(width-1),
// saturating at cap+1.
struct EnumSpace {
    std::uint64_t s = 0;
    unsigned __int128 count = 0;
    bool oversize = false;
};

EnumSpace enum_space(const Kernel& k, unsigned width, std::uint64_t cap) {
    cap = std::min<std::uint64_t>(cap, std::uint64_t{1} << 40);
    EnumSpace e;
    unsigned __int128 s128 = ipow128(k.m, k.n, std::numeric_limits<std::uint64_t>::max());
    if (s128 > std::numeric_limits<std::uint64_t>::max()) {
        e.oversize = true;
        return e;
    }
    e.s = static_cast<std::uint64_t>(s128);
    unsigned __int128 cap128 = cap;
    unsigned __int128 rest = ipow128(e.s, width - 1, cap128);
    e.count = rest > cap128 ? cap128 + 1 : (e.s - 1) * rest;
    if (e.count > cap128)
        e.oversize = true;
    return e;
}

// True when every window of this level escapes past the origin on the
// kernel's left side within lhat steps; `capped` reports an enumeration
// too large to attempt.
bool level_passes(const Kernel& k, unsigned lhat, const OracleOptions& opts, bool& capped) {
    if (k.r == 0)
        return false; // radius zero never moves values across the origin
    unsigned width = lhat * static_cast<unsigned>(k.r) + 1;
    EnumSpace e = enum_space(k, width, opts.enum_cap);
    if (e.oversize) {
        capped = true;
        return false;
    }
    std::int64_t count = static_cast<std::int64_t>(e.count);

    if (opts.parallel) {
        std::atomic<bool> failed{false};
#pragma omp parallel
        {
            Work w;
            w.digits.assign(width, 0);
#pragma omp for schedule(dynamic, 512)
            for (std::int64_t idx = 0; idx < count; ++idx) {
                if (failed.load(std::memory_order_relaxed))
                    continue;
                decode_digits(static_cast<std::uint64_t>(idx), e.s, width, w.digits.data());
                if (!crosses_origin(k, w.digits.data(), width, lhat, w))
                    failed.store(true, std::memory_order_relaxed);
            }
        }
        return !failed.load();
    }
    Work w;
    w.digits.assign(width, 0);
    for (std::int64_t idx = 0; idx < count; ++idx) {
        decode_digits(static_cast<std::uint64_t>(idx), e.s, width, w.digits.data());
        if (!crosses_origin(k, w.digits.data(), width, lhat, w))
            return false;
    }
    return true;
}

FiniteConfig config_from_digits(const Kernel& k, const std::uint64_t* digits, unsigned width) {
    FiniteConfig c{Modulus(k.m), k.n, {}};
    for (unsigned t = 0; t < width; ++t) {
        std::uint64_t d = digits[t];
        std::vector<std::uint64_t> col(k.n, 0);
        for (std::size_t i = 0; i < k.n; ++i) {
            col[i] = d % k.m;
            d /= k.m;
        }
        c.cols.emplace(-static_cast<std::int64_t>(t), std::move(col));
    }
    c.normalize();
    return c;
}

// Searches the kernel's left side for a window whose iterates never
// cross the origin. Exhaustive in lexicographic order when the space
// fits the cap, seeded sampling otherwise; always returns the
// lexicographically smallest hit found.
std::optional<FalsifyWitness> falsify_side(const Kernel& k, unsigned width, unsigned steps,
                                           const OracleOptions& opts, bool& exhaustive) {
    EnumSpace e = enum_space(k, width, opts.enum_cap);
    if (e.s == 0)
        throw std::overflow_error("column state space too large for the oracle");
    exhaustive = !e.oversize;

    if (exhaustive) {
        std::int64_t count = static_cast<std::int64_t>(e.count);
        if (opts.parallel) {
            std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
#pragma omp parallel
            {
                Work w;
                w.digits.assign(width, 0);
#pragma omp for schedule(dynamic, 512)
                for (std::int64_t idx = 0; idx < count; ++idx) {
                    std::uint64_t u = static_cast<std::uint64_t>(idx);
                    if (u >= best.load(std::memory_order_relaxed))
                        continue;
                    decode_digits(u, e.s, width, w.digits.data());
                    if (!crosses_origin(k, w.digits.data(), width, steps, w)) {
                        std::uint64_t prev = best.load(std::memory_order_relaxed);
                        while (prev > u &&
                               !best.compare_exchange_weak(prev, u, std::memory_order_relaxed)) {
                        }
                    }
                }
            }
            std::uint64_t hit = best.load();
            if (hit == std::numeric_limits<std::uint64_t>::max())
                return std::nullopt;
            std::vector<std::uint64_t> digits(width);
            decode_digits(hit, e.s, width, digits.data());
            return FalsifyWitness{config_from_digits(k, digits.data(), width), steps};
        }
        Work w;
        w.digits.assign(width, 0);
        for (std::int64_t idx = 0; idx < count; ++idx) {
            decode_digits(static_cast<std::uint64_t>(idx), e.s, width, w.digits.data());
            if (!crosses_origin(k, w.digits.data(), width, steps, w))
                return FalsifyWitness{config_from_digits(k, w.digits.data(), width), steps};
        }
        return std::nullopt;
    }

    // Sampled candidates, generated serially so the set depends only on
    // the seed.
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> top(1, e.s - 1);
    std::uniform_int_distribution<std::uint64_t> rest(0, e.s - 1);
    std::size_t samples =
        static_cast<std::size_t>(std::min<std::uint64_t>(opts.enum_cap, 10'000'000));
    std::vector<std::uint64_t> pool(samples * width);
    for (std::size_t i = 0; i < samples; ++i) {
        pool[i * width] = top(rng);
        for (unsigned t = 1; t < width; ++t)
            pool[i * width + t] = rest(rng);
    }

    std::vector<std::uint64_t> best;
    auto consider = [&](const std::uint64_t* digits) {
        std::vector<std::uint64_t> cand(digits, digits + width);
        if (best.empty() || std::lexicographical_compare(cand.begin(), cand.end(), best.begin(),
                                                         best.end()))
            best = std::move(cand);
    };

    if (opts.parallel) {
#pragma omp parallel
        {
            Work w;
#pragma omp for schedule(dynamic, 256)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
                const std::uint64_t* digits = &pool[static_cast<std::size_t>(i) * width];
                if (!crosses_origin(k, digits, width, steps, w)) {
#pragma omp critical(posexp_falsify_best)
                    consider(digits);
                }
            }
        }
    } else {
        Work w;
        for (std::size_t i = 0; i < samples; ++i) {
            const std::uint64_t* digits = &pool[i * width];
            if (!crosses_origin(k, digits, width, steps, w))
                consider(digits);
        }
    }
    if (best.empty())
        return std::nullopt;
    return FalsifyWitness{config_from_digits(k, best.data(), width), steps};
}

} // namespace

FiniteConfig step(const LcaRule& rule, const FiniteConfig& c) {
    if (c.mod != rule.modulus())
        throw ModulusMismatchError("configuration modulus differs from rule modulus");
    if (c.n != rule.dim())
        throw DimensionMismatchError("configuration dimension differs from rule dimension");
    Kernel k = make_kernel(rule);
    FiniteConfig out{c.mod, c.n, {}};
    for (const auto& [pos, col] : c.cols) {
        for (std::int64_t z = -k.r; z <= k.r; ++z) {
            std::int64_t q = pos - z;
            auto [it, inserted] = out.cols.try_emplace(q, std::vector<std::uint64_t>(c.n, 0));
            std::vector<std::uint64_t>& tgt = it->second;
            for (std::size_t i = 0; i < c.n; ++i) {
                unsigned __int128 acc = tgt[i];
                for (std::size_t j = 0; j < c.n; ++j)
                    acc += static_cast<unsigned __int128>(k.at(z, i, j)) * col[j];
                tgt[i] = static_cast<std::uint64_t>(acc % k.m);
            }
        }
    }
    out.normalize();
    return out;
}

VerifyResult verify_window(const LcaRule& rule, unsigned lhat_max, const OracleOptions& opts) {
    Kernel k = make_kernel(rule);
    Kernel kr = reflect(k);
    bool capped = false;
    for (unsigned lhat = 1; lhat <= lhat_max; ++lhat) {
        if (level_passes(k, lhat, opts, capped) && level_passes(kr, lhat, opts, capped))
            return VerifyResult{true, lhat, lhat_max};
        if (capped)
            break; // higher levels enumerate even more windows
    }
    return VerifyResult{false, 0, lhat_max};
}

FalsifyResult falsify(const LcaRule& rule, unsigned width, unsigned steps,
                      const OracleOptions& opts) {
    if (width == 0)
        throw std::invalid_argument("falsify: window width must be >= 1");
    FalsifyResult res;
    res.width = width;
    res.steps = steps;
    Kernel k = make_kernel(rule);
    Kernel kr = reflect(k);
    res.left = falsify_side(k, width, steps, opts, res.exhaustive_left);
    if (auto right = falsify_side(kr, width, steps, opts, res.exhaustive_right)) {
        right->config = right->config.reflected();
        res.right = std::move(right);
    }
    return res;
}

} // namespace posexp
