#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posexp/additive.hpp"
#include "posexp/oracle.hpp"

namespace posexp {

class JobError : public std::runtime_error {
public:
    explicit JobError(const std::string& msg) : std::runtime_error(msg) {}
    JobError(const std::string& msg, std::size_t line, std::size_t col)
        : std::runtime_error(msg), line_(line), col_(col) {}

    bool has_location() const noexcept { return line_ > 0; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return col_; }

    /// Message with a "line L, column C: " prefix when available.
    std::string display() const;

private:
    std::size_t line_ = 0;
    std::size_t col_ = 0;
};

struct Budgets {
    unsigned lhat = 8;
    unsigned width = 4;
    unsigned steps = 16;
    std::uint64_t seed = 0;
};

enum class ReportFormat { text, structured };

/// A parsed job: exactly one of lca/additive is set, depending on kind.
struct JobSpec {
    enum class Kind { lca, additive };

    Kind kind = Kind::lca;
    std::optional<LcaRule> lca;
    std::optional<AdditiveRule> additive;
    Budgets budgets;
    ReportFormat format = ReportFormat::text;
    /// Oracle execution mode; not part of the job document.
    bool parallel = true;
};

/// Parses and validates a JSON job document; throws JobError (with
/// line/column for syntax errors).
JobSpec parse_job(const std::string& text);

struct RunOutcome {
    std::string output;
    int exit_code = 0;
};

/// Executes one of: decide, charpoly, invariants, oracle, embed,
/// crosscheck. Throws JobError when the command does not apply to the
/// job. Exit code 2 signals a crosscheck inconsistency.
RunOutcome run_command(const std::string& command, const JobSpec& job);

/// Invariant-factor consistency of a matrix over a prime modulus: the
/// divisibility chain, product = characteristic polynomial, coefficients
/// free of denominators, and agreement between factorwise expansivity
/// and the characteristic-polynomial test.
struct InvariantConsistency {
    std::vector<TPoly<RatFunc>> factors;
    std::vector<std::string> violations;

    bool consistent() const noexcept { return violations.empty(); }
};

InvariantConsistency check_invariants(const LaMatrix& a);

/// Contradictions between the decision and oracle outcomes: a verified
/// expansivity against a false verdict, or a refuting witness against a
/// true verdict. Inconclusive oracle results contradict nothing.
std::vector<std::string> dynamic_contradictions(bool decided_expansive,
                                                const VerifyResult& verify,
                                                const FalsifyResult& falsify);

} // namespace posexp
