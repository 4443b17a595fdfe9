#include "posexp/laurent.hpp"

#include <cctype>
#include <cstdlib>

namespace posexp {

LaurentPoly& LaurentPoly::add_term(std::int64_t degree, std::uint64_t c) {
    c %= m_.value();
    if (c == 0)
        return *this;
    auto [it, inserted] = terms_.try_emplace(degree, c);
    if (!inserted) {
        std::uint64_t s = it->second + c;
        if (s >= m_.value())
            s -= m_.value();
        if (s == 0)
            terms_.erase(it);
        else
            it->second = s;
    }
    return *this;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly::check_same(a, b);
    LaurentPoly r = a;
    for (const auto& [d, c] : b.terms_)
        r.add_term(d, c);
    return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly::check_same(a, b);
    LaurentPoly r = a;
    std::uint64_t m = a.m_.value();
    for (const auto& [d, c] : b.terms_)
        r.add_term(d, m - c);
    return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly::check_same(a, b);
    LaurentPoly r(a.m_);
    std::uint64_t m = a.m_.value();
    for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_) {
            unsigned __int128 prod = static_cast<unsigned __int128>(ca) * cb;
            r.add_term(da + db, static_cast<std::uint64_t>(prod % m));
        }
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(m_);
    for (const auto& [d, c] : terms_)
        r.terms_.emplace(d, m_.value() - c);
    return r;
}

LaurentPoly LaurentPoly::times_scalar(std::uint64_t c) const {
    c %= m_.value();
    LaurentPoly r(m_);
    for (const auto& [d, cc] : terms_) {
        unsigned __int128 prod = static_cast<unsigned __int128>(cc) * c;
        r.add_term(d, static_cast<std::uint64_t>(prod % m_.value()));
    }
    return r;
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
    LaurentPoly r(m_);
    for (const auto& [d, c] : terms_)
        r.terms_.emplace(d + k, c);
    return r;
}

LaurentPoly LaurentPoly::reduced_mod(std::uint64_t q) const {
    LaurentPoly r((Modulus(q)));
    for (const auto& [d, c] : terms_)
        r.add_term(d, c % q);
    return r;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
};

[[noreturn]] void fail(const Cursor& c, const std::string& msg) {
    throw LaurentParseError(msg + " at position " + std::to_string(c.pos), c.pos);
}

std::uint64_t parse_coeff_mod(Cursor& c, std::uint64_t m) {
    std::uint64_t v = 0;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = (v * 10 + static_cast<std::uint64_t>(c.peek() - '0')) % m;
        ++c.pos;
    }
    return v;
}

std::int64_t parse_exponent(Cursor& c) {
    bool neg = false;
    if (!c.done() && (c.peek() == '-' || c.peek() == '+')) {
        neg = c.peek() == '-';
        ++c.pos;
    }
    if (c.done() || !std::isdigit(static_cast<unsigned char>(c.peek())))
        fail(c, "expected exponent digits");
    std::int64_t v = 0;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + (c.peek() - '0');
        if (v > (std::int64_t{1} << 40))
            fail(c, "exponent out of range");
        ++c.pos;
    }
    return neg ? -v : v;
}

} // namespace

LaurentPoly parse_laurent(std::string_view text, Modulus m) {
    Cursor c{text};
    LaurentPoly p(m);
    bool first = true;
    for (;;) {
        c.skip_ws();
        bool negate = false;
        if (!first) {
            if (c.done())
                break;
            if (c.peek() == '+' || c.peek() == '-') {
                negate = c.peek() == '-';
                ++c.pos;
                c.skip_ws();
            } else {
                fail(c, "expected '+', '-' or end of input");
            }
        }
        if (c.done())
            fail(c, first ? "empty polynomial" : "dangling operator");

        bool have_coeff = std::isdigit(static_cast<unsigned char>(c.peek()));
        std::uint64_t coeff = have_coeff ? parse_coeff_mod(c, m.value()) : 1;
        std::int64_t degree = 0;
        bool have_x = !c.done() && c.peek() == 'X';
        if (have_x) {
            ++c.pos;
            degree = 1;
            if (!c.done() && c.peek() == '^') {
                ++c.pos;
                degree = parse_exponent(c);
            }
        }
        if (!have_coeff && !have_x)
            fail(c, "expected term");
        if (negate)
            coeff = (m.value() - coeff % m.value()) % m.value();
        p.add_term(degree, coeff);
        first = false;
    }
    return p;
}

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    for (const auto& [d, c] : p.terms()) {
        if (!out.empty())
            out += " + ";
        if (d == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1)
                out += std::to_string(c);
            out += 'X';
            if (d != 1) {
                out += '^';
                out += std::to_string(d);
            }
        }
    }
    return out;
}

} // namespace posexp
