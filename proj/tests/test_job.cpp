#include "doctest.h"

#include <random>

#include "json.hpp"
#include "posexp/job.hpp"
#include "test_util.hpp"

using namespace posexp;

namespace {

std::string flagship_doc() {
    return R"({"kind":"lca","modulus":2,"n":2,"matrix":[["0","1"],["X + X^-1","0"]]})";
}

std::string cross_doc() {
    return R"({"kind":"additive","group":[4,2],"radius":0,"rules":{"0":[[0,2],[1,0]]}})";
}

template <class F>
std::string error_message(F&& f) {
    try {
        f();
    } catch (const JobError& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

bool contains(const std::string& s, const std::string& needle) {
    return s.find(needle) != std::string::npos;
}

} // namespace

TEST_SUITE("job") {

TEST_CASE("parsing a linear job fills defaults") {
    JobSpec job = parse_job(flagship_doc());
    CHECK(job.kind == JobSpec::Kind::lca);
    REQUIRE(job.lca.has_value());
    CHECK(job.lca->modulus() == Modulus(2));
    CHECK(job.lca->dim() == 2);
    CHECK(job.lca->matrix.at(1, 0) == parse_laurent("X + X^-1", Modulus(2)));
    CHECK(job.budgets.lhat == 8);
    CHECK(job.budgets.width == 4);
    CHECK(job.budgets.steps == 16);
    CHECK(job.budgets.seed == 0);
    CHECK(job.format == ReportFormat::text);
    CHECK(job.parallel);
}

TEST_CASE("parsing an additive job with explicit budgets and format") {
    std::string doc = R"({
        "kind": "additive",
        "group": [4, 2],
        "radius": 1,
        "rules": {"-1": [[1, 0], [0, 1]], "1": [[1, 2], [1, 1]]},
        "budgets": {"lhat": 3, "width": 2, "steps": 5, "seed": 9},
        "format": "structured"
    })";
    JobSpec job = parse_job(doc);
    CHECK(job.kind == JobSpec::Kind::additive);
    REQUIRE(job.additive.has_value());
    CHECK(job.additive->group.orders == std::vector<std::uint64_t>{4, 2});
    CHECK(job.additive->radius == 1);
    REQUIRE(job.additive->endos.size() == 2);
    CHECK(job.additive->endos.at(-1) == EndoMatrix{{1, 0}, {0, 1}});
    CHECK(job.additive->endos.at(1) == EndoMatrix{{1, 2}, {1, 1}});
    CHECK(job.budgets.lhat == 3);
    CHECK(job.budgets.width == 2);
    CHECK(job.budgets.steps == 5);
    CHECK(job.budgets.seed == 9);
    CHECK(job.format == ReportFormat::structured);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_job("{\n  \"kind\": }");
        FAIL("expected a JobError");
    } catch (const JobError& e) {
        CHECK(e.has_location());
        CHECK(e.line() == 2);
        CHECK(starts_with(e.display(), "line 2, column "));
    }
    JobError plain("boom");
    CHECK_FALSE(plain.has_location());
    CHECK(plain.display() == "boom");
    JobError located("boom", 3, 7);
    CHECK(located.display() == "line 3, column 7: boom");
}

TEST_CASE("document-level validation errors") {
    CHECK(error_message([] { parse_job("[1, 2]"); }) == "job document must be a JSON object");
    CHECK(error_message([] { parse_job(R"({"kind":"magma"})"); }) ==
          "kind must be \"lca\" or \"additive\"");
    CHECK(error_message([] { parse_job(R"({"modulus":2})"); }) ==
          "missing required key \"kind\"");
    CHECK(error_message([] { parse_job(R"({"kind":7})"); }) ==
          "kind must be \"lca\" or \"additive\"");
    CHECK(error_message([] {
              parse_job(R"({"kind":"lca","modulus":2,"n":1,"matrix":[["X"]],"extra":1})");
          }) == "unknown key \"extra\" in job");
}

TEST_CASE("linear job validation errors") {
    CHECK(error_message([] { parse_job(R"({"kind":"lca","n":1,"matrix":[["X"]]})"); }) ==
          "missing required key \"modulus\"");
    CHECK(contains(error_message([] {
                       parse_job(R"({"kind":"lca","modulus":1,"n":1,"matrix":[["X"]]})");
                   }),
                   "modulus must be in [2, "));
    CHECK(error_message([] {
              parse_job(R"({"kind":"lca","modulus":2,"n":2,"matrix":[["X"]]})");
          }) == "matrix must be an array of 2 rows");
    CHECK(error_message([] {
              parse_job(R"({"kind":"lca","modulus":2,"n":2,"matrix":[["X"],["1","0"]]})");
          }) == "matrix row 1 must have 2 entries");
    CHECK(error_message([] {
              parse_job(R"({"kind":"lca","modulus":2,"n":1,"matrix":[[7]]})");
          }) == "matrix entry (1,1) must be a string");
    CHECK(starts_with(error_message([] {
                          parse_job(R"({"kind":"lca","modulus":2,"n":2,)"
                                    R"("matrix":[["0","Y"],["1","0"]]})");
                      }),
                      "matrix entry (1,2): "));
}

TEST_CASE("additive job validation errors") {
    CHECK(error_message([] { parse_job(R"({"kind":"additive","group":[],"radius":0,"rules":{}})"); }) ==
          "group must be a nonempty array of cyclic orders");
    CHECK(contains(error_message([] {
                       parse_job(R"({"kind":"additive","group":[1],"radius":0,"rules":{}})");
                   }),
                   "group[0] must be in [2, "));
    CHECK(contains(error_message([] {
                       parse_job(R"({"kind":"additive","group":[2],"radius":-1,"rules":{}})");
                   }),
                   "radius must be in [0, "));
    CHECK(error_message([] {
              parse_job(R"({"kind":"additive","group":[2],"radius":0,"rules":[]})");
          }) == "rules must be an object keyed by neighbour offset");
    CHECK(error_message([] {
              parse_job(R"({"kind":"additive","group":[2],"radius":0,"rules":{"a":[[1]]}})");
          }) == "rule offset \"a\" is not an integer");
    CHECK(error_message([] {
              parse_job(
                  R"({"kind":"additive","group":[2],"radius":0,"rules":{"0":[[1]],"00":[[1]]}})");
          }) == "duplicate rule offset 0");
    CHECK(error_message([] {
              parse_job(R"({"kind":"additive","group":[2],"radius":0,"rules":{"0":[[1,2]]}})");
          }) == "rule at offset 0, row 1 must have 1 entries");
    CHECK(error_message([] {
              parse_job(R"({"kind":"additive","group":[2],"radius":0,"rules":{"2":[[1]]}})");
          }) == "offset 2 outside radius 0");
    CHECK(contains(error_message([] {
                       parse_job(R"({"kind":"additive","group":[2],"radius":0,)"
                                 R"("rules":{"0":[[1.5]]}})");
                   }),
                   "rule entry (0,1,1) must be an integer"));
}

TEST_CASE("budget and format validation errors") {
    auto with_budgets = [](const std::string& budgets) {
        return R"({"kind":"lca","modulus":2,"n":1,"matrix":[["X"]],"budgets":)" + budgets + "}";
    };
    CHECK(contains(error_message([&] { parse_job(with_budgets(R"({"lhat": 65})")); }),
                   "budgets.lhat must be in [0, 64]"));
    CHECK(contains(error_message([&] { parse_job(with_budgets(R"({"width": 0})")); }),
                   "budgets.width must be in [1, 64]"));
    CHECK(error_message([&] { parse_job(with_budgets(R"({"seed": -4})")); }) ==
          "budgets.seed must be a nonnegative integer");
    CHECK(error_message([&] { parse_job(with_budgets(R"({"depth": 2})")); }) ==
          "unknown key \"depth\" in \"budgets\"");
    CHECK(error_message([&] { parse_job(with_budgets("3")); }) == "budgets must be an object");
    CHECK(error_message([] {
              parse_job(R"({"kind":"lca","modulus":2,"n":1,"matrix":[["X"]],"format":"yaml"})");
          }) == "format must be \"text\" or \"structured\"");
}

TEST_CASE("unknown commands and kind mismatches are rejected") {
    JobSpec job = parse_job(flagship_doc());
    CHECK(error_message([&] { run_command("solve", job); }) == "unknown command \"solve\"");
    CHECK(error_message([&] { run_command("embed", job); }) == "embed requires an additive job");
}

TEST_CASE("deciding the flagship rule prints the full text report") {
    JobSpec job = parse_job(flagship_doc());
    RunOutcome out = run_command("decide", job);
    CHECK(out.exit_code == 0);
    CHECK(out.output == "decide\n"
                        "kind: lca\n"
                        "modulus: 2\n"
                        "n: 2\n"
                        "matrix:\n"
                        "  [0, 1]\n"
                        "  [X^-1 + X, 0]\n"
                        "prime 2 exponent 1:\n"
                        "  charpoly: t^2 + (X^-1 + X)\n"
                        "  det nonzero: yes\n"
                        "  expansive: deg+(a0) = 1 > 0 and dominant, "
                        "deg-(a0) = -1 < 0 and dominated\n"
                        "positively expansive: yes\n");
}

TEST_CASE("structured output is machine-readable and self-describing") {
    JobSpec job = parse_job(flagship_doc());
    job.format = ReportFormat::structured;
    RunOutcome out = run_command("decide", job);
    CHECK(out.exit_code == 0);
    auto j = nlohmann::json::parse(out.output);
    CHECK(j.at("tool") == "posexp");
    CHECK(j.at("command") == "decide");
    CHECK(j.at("job").at("kind") == "lca");
    CHECK(j.at("job").at("matrix").at(1).at(0) == "X^-1 + X");
    CHECK(j.at("result").at("positively_expansive") == true);
    CHECK(j.at("result").at("per_prime").at(0).at("p") == 2);
    CHECK(j.at("result").at("per_prime").at(0).at("charpoly") ==
          nlohmann::json::array({"X^-1 + X", "0", "1"}));

    RunOutcome oracle = run_command("oracle", job);
    auto oj = nlohmann::json::parse(oracle.output);
    CHECK(oj.at("budgets").at("lhat") == 8);
    CHECK(oj.at("result").at("verify").at("outcome") == "verified");
    CHECK(oj.at("result").at("verify").at("level") == 2);
    CHECK(oj.at("result").at("falsify").at("outcome") == "no witness found");
}

TEST_CASE("the group embedding report shows generators and the matrix") {
    JobSpec job = parse_job(cross_doc());
    RunOutcome out = run_command("embed", job);
    CHECK(out.exit_code == 0);
    CHECK(contains(out.output, "valid: yes"));
    CHECK(contains(out.output,
                   "component p=2 exponents [2, 1] coordinates [1, 2] modulus 4:"));
    CHECK(contains(out.output, "  psi(e1) = [1, 0]\n  psi(e2) = [0, 2]\n"));
    CHECK(contains(out.output, "  matrix:\n    [0, 1]\n    [2, 0]\n"));

    // An invalid rule reports the violating entry instead.
    JobSpec bad = parse_job(
        R"({"kind":"additive","group":[4,2],"radius":0,"rules":{"0":[[0,1],[2,0]]}})");
    RunOutcome rep = run_command("embed", bad);
    CHECK(rep.exit_code == 0);
    CHECK(contains(rep.output, "valid: no"));
    CHECK(contains(rep.output, "violation: entry (0,1,2) must be divisible by 2"));
    // Analysis commands refuse to run on an invalid rule.
    CHECK(contains(error_message([&] { run_command("decide", bad); }),
                   "rule is not a family of endomorphisms"));
}

TEST_CASE("crosscheck is consistent on the flagship rule") {
    JobSpec job = parse_job(flagship_doc());
    job.budgets.lhat = 4;
    job.budgets.width = 3;
    job.budgets.steps = 8;
    RunOutcome out = run_command("crosscheck", job);
    CHECK(out.exit_code == 0);
    CHECK(contains(out.output, "consistent: yes"));
    CHECK(contains(out.output, "verify: verified at level 2"));
    CHECK(contains(out.output, "falsify: no witness found (left exhaustive, right exhaustive)"));
}

TEST_CASE("a starved falsification budget trips the crosscheck") {
    // One step is not enough for the flagship rule to push values past
    // the origin from every window, so the bounded search finds a
    // "witness" even though the rule is expansive. The crosscheck
    // faithfully reports the disagreement.
    JobSpec job = parse_job(flagship_doc());
    job.budgets.width = 2;
    job.budgets.steps = 1;
    job.budgets.lhat = 3;
    RunOutcome out = run_command("crosscheck", job);
    CHECK(out.exit_code == 2);
    CHECK(contains(out.output, "consistent: no"));
    CHECK(contains(out.output,
                   "decider claims expansive but the oracle found a refuting witness"));
}

TEST_CASE("invariant-factor consistency holds for random prime-field matrices") {
    std::mt19937_64 rng(123);
    for (std::uint64_t p : {2ull, 3ull, 5ull})
        for (std::size_t n = 1; n <= 3; ++n)
            for (int trial = 0; trial < 12; ++trial) {
                LaMatrix a = testutil::random_la_matrix(rng, Modulus(p), n, -1, 1);
                InvariantConsistency ic = check_invariants(a);
                CHECK(ic.consistent());
                CHECK(ic.violations.empty());
                CHECK(!ic.factors.empty());
            }
}

TEST_CASE("contradiction reporting between decision and dynamics") {
    VerifyResult verified{true, 2, 8};
    VerifyResult inconclusive{false, 0, 8};
    FiniteConfig cell{Modulus(2), 1, {}};
    cell.cols[0] = {1};
    FalsifyResult clean;
    clean.width = 4;
    clean.steps = 16;
    FalsifyResult refuted_left = clean;
    refuted_left.left = FalsifyWitness{cell, 16};
    FalsifyResult refuted_both = refuted_left;
    refuted_both.right = FalsifyWitness{cell, 16};

    CHECK(dynamic_contradictions(true, verified, clean).empty());
    CHECK(dynamic_contradictions(false, inconclusive, refuted_left).empty());
    CHECK(dynamic_contradictions(false, inconclusive, clean).empty());

    auto v1 = dynamic_contradictions(true, inconclusive, refuted_left);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0] ==
          "decider claims expansive but the oracle found a refuting witness (left)");
    auto v2 = dynamic_contradictions(true, inconclusive, refuted_both);
    REQUIRE(v2.size() == 1);
    CHECK(contains(v2[0], "(left and right)"));

    auto v3 = dynamic_contradictions(false, verified, clean);
    REQUIRE(v3.size() == 1);
    CHECK(v3[0] ==
          "decider claims not expansive but window verification succeeded at level 2");
}

} // TEST_SUITE
