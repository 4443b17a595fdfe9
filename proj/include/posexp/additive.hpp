#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "posexp/decider.hpp"

namespace posexp {

class InvalidRuleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite abelian group presented as a product of cyclic factors
/// Z/orders[0] x ... x Z/orders[d-1], every order >= 2.
struct GroupSpec {
    std::vector<std::uint64_t> orders;

    std::size_t dim() const noexcept { return orders.size(); }
    void check() const;
};

/// p-primary part of a GroupSpec: Z/p^e1 x ... x Z/p^es with exponents
/// descending. coords[i] is the originating coordinate in the group.
struct PrimaryComponent {
    std::uint64_t p = 0;
    std::vector<unsigned> exponents;
    std::vector<std::size_t> coords;

    std::size_t dim() const noexcept { return exponents.size(); }
    /// p^e1, the largest cyclic order in the component.
    std::uint64_t modulus() const { return pow_u64(p, exponents.at(0)); }
};

/// Components for all primes dividing some order, primes ascending.
std::vector<PrimaryComponent> primary_decompose(const GroupSpec& g);

/// Integer matrix acting on column vectors of group elements; entry
/// (i,j) multiplies coordinate j into coordinate i.
using EndoMatrix = std::vector<std::vector<std::int64_t>>;

/// Cellular automaton on G^Z given by one endomorphism per offset in
/// [-radius, radius]; missing offsets act as zero.
struct AdditiveRule {
    GroupSpec group;
    std::int64_t radius = 0;
    std::map<std::int64_t, EndoMatrix> endos;

    /// Validates group, radius, offsets and matrix shapes; throws
    /// InvalidRuleError.
    void check_shape() const;
};

/// First entry (offsets ascending, then row-major) that fails to define
/// an endomorphism of the group. Row/col are 1-based for reporting.
struct EndoViolation {
    std::int64_t offset = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    std::uint64_t required_divisor = 0;

    std::string describe() const;
};

std::optional<EndoViolation> validate_rule(const AdditiveRule& rule);

/// Embedding of a component element into (Z/p^e1)^s: coordinate i is
/// scaled by p^(e1 - ei).
std::vector<std::uint64_t> psi(const PrimaryComponent& comp, std::span<const std::uint64_t> h);

/// Component coordinates of a full group element.
std::vector<std::uint64_t> project_component(const PrimaryComponent& comp, const GroupSpec& g,
                                             std::span<const std::uint64_t> element);

/// The linear CA on (Z/p^e1)^s intertwined with the component dynamics
/// through psi. Requires a valid rule (throws InvalidRuleError otherwise).
LcaRule associated_lca(const PrimaryComponent& comp, const AdditiveRule& rule);

using GroupElement = std::vector<std::uint64_t>;

/// Finitely supported configuration of group elements; zero cells are
/// dropped.
struct GroupConfig {
    std::map<std::int64_t, GroupElement> cells;
};

/// One step of the additive CA on a finitely supported configuration.
GroupConfig apply_additive(const AdditiveRule& rule, const GroupConfig& c);

struct ComponentVerdict {
    PrimaryComponent component;
    LcaRule lca;
    Verdict verdict;
};

struct AdditiveVerdict {
    bool positively_expansive = false;
    std::vector<ComponentVerdict> components;
};

/// Positive expansivity of the additive CA: the associated linear CA of
/// every primary component must be positively expansive.
AdditiveVerdict decide_additive(const AdditiveRule& rule);

} // namespace posexp
