#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace posexp {

class InvalidModulusError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ModulusMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ring modulus m >= 2. Values are validated once at construction so the
/// arithmetic layer never has to re-check.
class Modulus {
public:
    explicit Modulus(std::uint64_t m) : m_(m) {
        if (m < 2)
            throw InvalidModulusError("modulus must be >= 2, got " + std::to_string(m));
    }

    std::uint64_t value() const noexcept { return m_; }

    friend bool operator==(Modulus a, Modulus b) noexcept { return a.m_ == b.m_; }
    friend bool operator!=(Modulus a, Modulus b) noexcept { return a.m_ != b.m_; }

private:
    std::uint64_t m_;
};

/// Element of Z/mZ stored canonically in [0, m).
class Residue {
public:
    Residue(std::uint64_t value, Modulus m) : v_(value % m.value()), m_(m) {}

    static Residue from_signed(std::int64_t value, Modulus m) {
        std::int64_t mm = static_cast<std::int64_t>(m.value());
        std::int64_t r = value % mm;
        if (r < 0)
            r += mm;
        return Residue(static_cast<std::uint64_t>(r), m);
    }

    std::uint64_t value() const noexcept { return v_; }
    Modulus modulus() const noexcept { return m_; }
    bool is_zero() const noexcept { return v_ == 0; }

    friend Residue operator+(Residue a, Residue b) {
        check_same(a, b);
        std::uint64_t s = a.v_ + b.v_;
        if (s >= a.m_.value())
            s -= a.m_.value();
        return Residue(s, a.m_, raw_tag{});
    }

    friend Residue operator-(Residue a, Residue b) {
        check_same(a, b);
        std::uint64_t s = a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.m_.value() - b.v_;
        return Residue(s, a.m_, raw_tag{});
    }

    friend Residue operator*(Residue a, Residue b) {
        check_same(a, b);
        unsigned __int128 p = static_cast<unsigned __int128>(a.v_) * b.v_;
        return Residue(static_cast<std::uint64_t>(p % a.m_.value()), a.m_, raw_tag{});
    }

    Residue operator-() const {
        return Residue(v_ == 0 ? 0 : m_.value() - v_, m_, raw_tag{});
    }

    friend bool operator==(Residue a, Residue b) {
        check_same(a, b);
        return a.v_ == b.v_;
    }

private:
    struct raw_tag {};
    Residue(std::uint64_t v, Modulus m, raw_tag) : v_(v), m_(m) {}

    static void check_same(Residue a, Residue b) {
        if (a.m_ != b.m_)
            throw ModulusMismatchError("residues have different moduli: " +
                                       std::to_string(a.m_.value()) + " vs " +
                                       std::to_string(b.m_.value()));
    }

    std::uint64_t v_;
    Modulus m_;
};

struct PrimePower {
    std::uint64_t p;
    unsigned k;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

bool is_prime(std::uint64_t x);

/// Prime factorisation of m >= 2, primes strictly increasing, exponents >= 1.
std::vector<PrimePower> factor(std::uint64_t m);

/// base^exp over uint64, throwing on overflow. Exponents here come from
/// group orders and are tiny.
std::uint64_t pow_u64(std::uint64_t base, unsigned exp);

} // namespace posexp
