#include "posexp/modarith.hpp"

#include <limits>

namespace posexp {

bool is_prime(std::uint64_t x) {
    if (x < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= x; ++d)
        if (x % d == 0)
            return false;
    return true;
}

std::vector<PrimePower> factor(std::uint64_t m) {
    if (m < 2)
        throw InvalidModulusError("cannot factor " + std::to_string(m) + ", need >= 2");
    std::vector<PrimePower> out;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            unsigned k = 0;
            while (m % d == 0) {
                m /= d;
                ++k;
            }
            out.push_back({d, k});
        }
    }
    if (m > 1)
        out.push_back({m, 1});
    return out;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw std::overflow_error("pow_u64 overflow: " + std::to_string(base) + "^" +
                                      std::to_string(exp));
        r *= base;
    }
    return r;
}

} // namespace posexp
