#include "posexp/job.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "json.hpp"

namespace posexp {

using ojson = nlohmann::ordered_json;

std::string JobError::display() const {
    if (!has_location())
        return what();
    return "line " + std::to_string(line_) + ", column " + std::to_string(col_) + ": " + what();
}

namespace {

// ---------------------------------------------------------------------
// Parsing

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

void check_keys(const ojson& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw JobError("unknown key \"" + item.key() + "\" in " + where);
}

const ojson& require(const ojson& j, const std::string& key) {
    if (!j.contains(key))
        throw JobError("missing required key \"" + key + "\"");
    return j.at(key);
}

std::int64_t get_int(const ojson& v, const std::string& what, std::int64_t lo, std::int64_t hi) {
    if (!v.is_number_integer())
        throw JobError(what + " must be an integer");
    std::int64_t x = v.get<std::int64_t>();
    if (x < lo || x > hi)
        throw JobError(what + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "], got " + std::to_string(x));
    return x;
}

Budgets parse_budgets(const ojson& j) {
    Budgets b;
    check_keys(j, {"lhat", "width", "steps", "seed"}, "\"budgets\"");
    if (j.contains("lhat"))
        b.lhat = static_cast<unsigned>(get_int(j.at("lhat"), "budgets.lhat", 0, 64));
    if (j.contains("width"))
        b.width = static_cast<unsigned>(get_int(j.at("width"), "budgets.width", 1, 64));
    if (j.contains("steps"))
        b.steps = static_cast<unsigned>(get_int(j.at("steps"), "budgets.steps", 1, 1 << 20));
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0)
            throw JobError("budgets.seed must be a nonnegative integer");
        b.seed = j.at("seed").get<std::uint64_t>();
    }
    return b;
}

LcaRule parse_lca(const ojson& j) {
    std::uint64_t m =
        static_cast<std::uint64_t>(get_int(require(j, "modulus"), "modulus", 2, std::int64_t{1} << 62));
    std::size_t n = static_cast<std::size_t>(get_int(require(j, "n"), "n", 1, 64));
    const ojson& rows = require(j, "matrix");
    if (!rows.is_array() || rows.size() != n)
        throw JobError("matrix must be an array of " + std::to_string(n) + " rows");
    LaMatrix a(Modulus(m), n);
    for (std::size_t i = 0; i < n; ++i) {
        const ojson& row = rows.at(i);
        if (!row.is_array() || row.size() != n)
            throw JobError("matrix row " + std::to_string(i + 1) + " must have " +
                           std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) {
            const ojson& cell = row.at(k);
            if (!cell.is_string())
                throw JobError("matrix entry (" + std::to_string(i + 1) + "," +
                               std::to_string(k + 1) + ") must be a string");
            try {
                a.at(i, k) = parse_laurent(cell.get<std::string>(), Modulus(m));
            } catch (const LaurentParseError& e) {
                throw JobError("matrix entry (" + std::to_string(i + 1) + "," +
                               std::to_string(k + 1) + "): " + e.what());
            }
        }
    }
    return LcaRule{std::move(a)};
}

AdditiveRule parse_additive(const ojson& j) {
    AdditiveRule rule;
    const ojson& group = require(j, "group");
    if (!group.is_array() || group.empty())
        throw JobError("group must be a nonempty array of cyclic orders");
    for (std::size_t i = 0; i < group.size(); ++i)
        rule.group.orders.push_back(static_cast<std::uint64_t>(
            get_int(group.at(i), "group[" + std::to_string(i) + "]", 2, std::int64_t{1} << 40)));
    rule.radius = get_int(require(j, "radius"), "radius", 0, 1 << 20);
    const ojson& rules = require(j, "rules");
    if (!rules.is_object())
        throw JobError("rules must be an object keyed by neighbour offset");
    std::size_t d = rule.group.dim();
    for (const auto& item : rules.items()) {
        const std::string& key = item.key();
        std::int64_t z = 0;
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), z);
        if (ec != std::errc() || p != key.data() + key.size())
            throw JobError("rule offset \"" + key + "\" is not an integer");
        if (rule.endos.count(z))
            throw JobError("duplicate rule offset " + std::to_string(z));
        const ojson& mat = item.value();
        if (!mat.is_array() || mat.size() != d)
            throw JobError("rule at offset " + std::to_string(z) + " must be a " +
                           std::to_string(d) + "x" + std::to_string(d) + " integer matrix");
        EndoMatrix em(d, std::vector<std::int64_t>(d, 0));
        for (std::size_t i = 0; i < d; ++i) {
            const ojson& row = mat.at(i);
            if (!row.is_array() || row.size() != d)
                throw JobError("rule at offset " + std::to_string(z) + ", row " +
                               std::to_string(i + 1) + " must have " + std::to_string(d) +
                               " entries");
            for (std::size_t k = 0; k < d; ++k)
                em[i][k] = get_int(row.at(k),
                                   "rule entry (" + std::to_string(z) + "," +
                                       std::to_string(i + 1) + "," + std::to_string(k + 1) + ")",
                                   -(std::int64_t{1} << 60), std::int64_t{1} << 60);
        }
        rule.endos.emplace(z, std::move(em));
    }
    try {
        rule.check_shape();
    } catch (const InvalidRuleError& e) {
        throw JobError(e.what());
    }
    return rule;
}

// ---------------------------------------------------------------------
// Shared rendering

std::string yesno(bool b) { return b ? "yes" : "no"; }

template <class T>
std::string bracket_list(const std::vector<T>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

std::vector<std::string> matrix_rows(const LaMatrix& a) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        std::string row = "[";
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (j)
                row += ", ";
            row += to_string(a.at(i, j));
        }
        rows.push_back(row + "]");
    }
    return rows;
}

ojson matrix_json(const LaMatrix& a) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < a.dim(); ++j)
            row.push_back(to_string(a.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string tpoly_display(const TPoly<LaurentPoly>& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        const LaurentPoly& c = f.coeff(static_cast<std::size_t>(i));
        if (c.is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        std::string var = i == 0 ? "" : i == 1 ? "t" : "t^" + std::to_string(i);
        if (i == 0)
            out += "(" + to_string(c) + ")";
        else if (c.is_one())
            out += var;
        else
            out += "(" + to_string(c) + ")" + var;
    }
    return out;
}

std::vector<std::string> tpoly_coeff_strings(const TPoly<LaurentPoly>& f) {
    std::vector<std::string> out;
    for (int i = 0; i <= f.degree(); ++i)
        out.push_back(to_string(f.coeff(static_cast<std::size_t>(i))));
    return out;
}

std::string rat_str(const RatFunc& r) {
    if (r.is_polynomial())
        return to_string(r.num());
    return to_string(r.num()) + " / (" + to_string(r.den()) + ")";
}

std::string fpoly_display(const TPoly<RatFunc>& f) {
    if (f.is_zero())
        return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        const RatFunc& c = f.coeff(static_cast<std::size_t>(i));
        if (c.is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        std::string var = i == 0 ? "" : i == 1 ? "t" : "t^" + std::to_string(i);
        if (i == 0)
            out += "(" + rat_str(c) + ")";
        else if (c.is_one())
            out += var;
        else
            out += "(" + rat_str(c) + ")" + var;
    }
    return out;
}

std::vector<std::string> fpoly_coeff_strings(const TPoly<RatFunc>& f) {
    std::vector<std::string> out;
    for (int i = 0; i <= f.degree(); ++i)
        out.push_back(rat_str(f.coeff(static_cast<std::size_t>(i))));
    return out;
}

std::string group_display(const GroupSpec& g) {
    std::string out;
    for (std::size_t i = 0; i < g.orders.size(); ++i) {
        if (i)
            out += " x ";
        out += "Z/" + std::to_string(g.orders[i]);
    }
    return out;
}

ojson job_json(const JobSpec& job) {
    ojson j;
    if (job.kind == JobSpec::Kind::lca) {
        const LcaRule& r = *job.lca;
        j["kind"] = "lca";
        j["modulus"] = r.modulus().value();
        j["n"] = r.dim();
        j["matrix"] = matrix_json(r.matrix);
    } else {
        const AdditiveRule& r = *job.additive;
        j["kind"] = "additive";
        j["group"] = r.group.orders;
        j["radius"] = r.radius;
        ojson rules = ojson::object();
        for (const auto& [z, mat] : r.endos)
            rules[std::to_string(z)] = mat;
        j["rules"] = std::move(rules);
    }
    return j;
}

std::vector<std::string> job_text(const JobSpec& job) {
    std::vector<std::string> lines;
    if (job.kind == JobSpec::Kind::lca) {
        const LcaRule& r = *job.lca;
        lines.push_back("kind: lca");
        lines.push_back("modulus: " + std::to_string(r.modulus().value()));
        lines.push_back("n: " + std::to_string(r.dim()));
        lines.push_back("matrix:");
        for (const std::string& row : matrix_rows(r.matrix))
            lines.push_back("  " + row);
    } else {
        const AdditiveRule& r = *job.additive;
        lines.push_back("kind: additive");
        lines.push_back("group: " + group_display(r.group));
        lines.push_back("radius: " + std::to_string(r.radius));
        lines.push_back("rules:");
        for (const auto& [z, mat] : r.endos) {
            lines.push_back("  offset " + std::to_string(z) + ":");
            for (const auto& row : mat)
                lines.push_back("    " + bracket_list(row));
        }
    }
    return lines;
}

ojson budgets_json(const Budgets& b) {
    ojson j;
    j["lhat"] = b.lhat;
    j["width"] = b.width;
    j["steps"] = b.steps;
    j["seed"] = b.seed;
    return j;
}

std::string budgets_text(const Budgets& b) {
    return "budgets: lhat=" + std::to_string(b.lhat) + " width=" + std::to_string(b.width) +
           " steps=" + std::to_string(b.steps) + " seed=" + std::to_string(b.seed);
}

ojson prime_branch_json(const PrimeBranch& b) {
    ojson j;
    j["p"] = b.p;
    j["k"] = b.k;
    j["charpoly"] = tpoly_coeff_strings(b.charpoly_mod_p);
    j["charpoly_display"] = tpoly_display(b.charpoly_mod_p);
    j["det_nonzero"] = b.det_nonzero;
    j["expansive"] = b.report.expansive;
    j["explanation"] = b.report.describe();
    return j;
}

void prime_branch_text(std::vector<std::string>& lines, const std::string& indent,
                       const PrimeBranch& b) {
    lines.push_back(indent + "prime " + std::to_string(b.p) + " exponent " + std::to_string(b.k) +
                    ":");
    lines.push_back(indent + "  charpoly: " + tpoly_display(b.charpoly_mod_p));
    lines.push_back(indent + "  det nonzero: " + yesno(b.det_nonzero));
    lines.push_back(indent + "  " + b.report.describe());
}

std::string component_heading(const PrimaryComponent& c) {
    std::vector<std::uint64_t> coords1;
    for (std::size_t x : c.coords)
        coords1.push_back(static_cast<std::uint64_t>(x + 1));
    std::vector<std::uint64_t> exps(c.exponents.begin(), c.exponents.end());
    return "component p=" + std::to_string(c.p) + " exponents " + bracket_list(exps) +
           " coordinates " + bracket_list(coords1) + " modulus " + std::to_string(c.modulus());
}

ojson component_header_json(const PrimaryComponent& c) {
    ojson j;
    j["p"] = c.p;
    j["exponents"] = c.exponents;
    ojson coords = ojson::array();
    for (std::size_t x : c.coords)
        coords.push_back(x + 1);
    j["coordinates"] = std::move(coords);
    j["modulus"] = c.modulus();
    return j;
}

ojson witness_json(const FiniteConfig& c) {
    ojson arr = ojson::array();
    for (const auto& [pos, col] : c.cols) {
        ojson cell;
        cell["position"] = pos;
        cell["column"] = col;
        arr.push_back(std::move(cell));
    }
    return arr;
}

std::string witness_text(const FiniteConfig& c) {
    std::string out = "[";
    bool first = true;
    for (const auto& [pos, col] : c.cols) {
        if (!first)
            out += ", ";
        first = false;
        out += "(" + std::to_string(pos) + ", " + bracket_list(col) + ")";
    }
    return out + "]";
}

ojson verify_json(const VerifyResult& v) {
    ojson j;
    if (v.verified) {
        j["outcome"] = "verified";
        j["level"] = v.lhat;
    } else {
        j["outcome"] = "inconclusive";
        j["budget"] = v.budget;
    }
    return j;
}

std::string verify_text(const VerifyResult& v) {
    if (v.verified)
        return "verify: verified at level " + std::to_string(v.lhat);
    return "verify: inconclusive (budget " + std::to_string(v.budget) + ")";
}

ojson falsify_json(const FalsifyResult& f) {
    ojson j;
    j["outcome"] = f.refuted() ? "witness (bounded search)" : "no witness found";
    j["width"] = f.width;
    j["steps"] = f.steps;
    j["exhaustive_left"] = f.exhaustive_left;
    j["exhaustive_right"] = f.exhaustive_right;
    ojson sides = ojson::array();
    if (f.left)
        sides.push_back("left");
    if (f.right)
        sides.push_back("right");
    j["sides"] = std::move(sides);
    if (f.left)
        j["left_witness"] = witness_json(f.left->config);
    if (f.right)
        j["right_witness"] = witness_json(f.right->config);
    return j;
}

void falsify_text(std::vector<std::string>& lines, const std::string& indent,
                  const FalsifyResult& f) {
    if (!f.refuted()) {
        lines.push_back(indent + "falsify: no witness found (left " +
                        (f.exhaustive_left ? "exhaustive" : "sampled") + ", right " +
                        (f.exhaustive_right ? "exhaustive" : "sampled") + ")");
        return;
    }
    std::string sides = f.left && f.right ? "left and right" : f.left ? "left" : "right";
    lines.push_back(indent + "falsify: witness (bounded search) on " + sides);
    if (f.left)
        lines.push_back(indent + "  left witness (" +
                        (f.exhaustive_left ? "exhaustive" : "sampled") +
                        " search): " + witness_text(f.left->config));
    if (f.right)
        lines.push_back(indent + "  right witness (" +
                        (f.exhaustive_right ? "exhaustive" : "sampled") +
                        " search): " + witness_text(f.right->config));
}

ojson invariants_json_entry(std::uint64_t p, unsigned k, const InvariantConsistency& ic) {
    ojson j;
    j["p"] = p;
    j["k"] = k;
    ojson factors = ojson::array();
    for (const auto& f : ic.factors) {
        ojson fj;
        fj["coeffs"] = fpoly_coeff_strings(f);
        fj["display"] = fpoly_display(f);
        factors.push_back(std::move(fj));
    }
    j["factors"] = std::move(factors);
    j["consistent"] = ic.consistent();
    j["violations"] = ic.violations;
    return j;
}

void invariants_text(std::vector<std::string>& lines, const std::string& indent, std::uint64_t p,
                     const InvariantConsistency& ic) {
    lines.push_back(indent + "invariants prime " + std::to_string(p) + ":");
    for (std::size_t i = 0; i < ic.factors.size(); ++i)
        lines.push_back(indent + "  factor " + std::to_string(i + 1) + ": " +
                        fpoly_display(ic.factors[i]));
    for (const std::string& v : ic.violations)
        lines.push_back(indent + "  violation: " + v);
    lines.push_back(indent + "  consistent: " + yesno(ic.consistent()));
}

// ---------------------------------------------------------------------
// Commands

RunOutcome finish(const JobSpec& job, const std::string& command, ojson result,
                  const std::vector<std::string>& text_lines, const ojson* budgets = nullptr,
                  int exit_code = 0) {
    if (job.format == ReportFormat::structured) {
        ojson root;
        root["tool"] = "posexp";
        root["command"] = command;
        root["job"] = job_json(job);
        if (budgets)
            root["budgets"] = *budgets;
        root["result"] = std::move(result);
        return {root.dump(2) + "\n", exit_code};
    }
    std::string out = command + "\n";
    for (const std::string& line : job_text(job))
        out += line + "\n";
    for (const std::string& line : text_lines)
        out += line + "\n";
    return {out, exit_code};
}

void require_valid_additive(const AdditiveRule& rule) {
    if (auto v = validate_rule(rule))
        throw JobError("rule is not a family of endomorphisms: " + v->describe());
}

RunOutcome run_decide(const JobSpec& job) {
    ojson result;
    std::vector<std::string> lines;
    if (job.kind == JobSpec::Kind::lca) {
        Verdict v = decide_lca(*job.lca);
        result["positively_expansive"] = v.positively_expansive;
        ojson per = ojson::array();
        for (const PrimeBranch& b : v.per_prime) {
            per.push_back(prime_branch_json(b));
            prime_branch_text(lines, "", b);
        }
        result["per_prime"] = std::move(per);
        lines.push_back("positively expansive: " + yesno(v.positively_expansive));
    } else {
        require_valid_additive(*job.additive);
        AdditiveVerdict v = decide_additive(*job.additive);
        result["positively_expansive"] = v.positively_expansive;
        ojson comps = ojson::array();
        for (const ComponentVerdict& cv : v.components) {
            ojson c = component_header_json(cv.component);
            c["matrix"] = matrix_json(cv.lca.matrix);
            c["positively_expansive"] = cv.verdict.positively_expansive;
            ojson per = ojson::array();
            for (const PrimeBranch& b : cv.verdict.per_prime)
                per.push_back(prime_branch_json(b));
            c["per_prime"] = std::move(per);
            comps.push_back(std::move(c));

            lines.push_back(component_heading(cv.component) + ":");
            lines.push_back("  matrix:");
            for (const std::string& row : matrix_rows(cv.lca.matrix))
                lines.push_back("    " + row);
            for (const PrimeBranch& b : cv.verdict.per_prime)
                prime_branch_text(lines, "  ", b);
        }
        result["components"] = std::move(comps);
        lines.push_back("positively expansive: " + yesno(v.positively_expansive));
    }
    return finish(job, "decide", std::move(result), lines);
}

RunOutcome run_charpoly(const JobSpec& job) {
    ojson result;
    std::vector<std::string> lines;
    if (job.kind == JobSpec::Kind::lca) {
        CharPoly cp = charpoly(job.lca->matrix);
        result["charpoly"] = tpoly_coeff_strings(cp);
        result["charpoly_display"] = tpoly_display(cp);
        lines.push_back("charpoly: " + tpoly_display(cp));
        ojson per = ojson::array();
        for (const PrimePower& pp : factor(job.lca->modulus().value())) {
            CharPoly rp = charpoly(job.lca->matrix.reduced_mod(pp.p));
            ojson e;
            e["p"] = pp.p;
            e["k"] = pp.k;
            e["charpoly"] = tpoly_coeff_strings(rp);
            e["charpoly_display"] = tpoly_display(rp);
            per.push_back(std::move(e));
            lines.push_back("prime " + std::to_string(pp.p) + " exponent " +
                            std::to_string(pp.k) + ": charpoly: " + tpoly_display(rp));
        }
        result["per_prime"] = std::move(per);
    } else {
        require_valid_additive(*job.additive);
        ojson comps = ojson::array();
        for (const PrimaryComponent& comp : primary_decompose(job.additive->group)) {
            LcaRule lca = associated_lca(comp, *job.additive);
            CharPoly cp = charpoly(lca.matrix);
            CharPoly cpp = charpoly(lca.matrix.reduced_mod(comp.p));
            ojson c = component_header_json(comp);
            c["matrix"] = matrix_json(lca.matrix);
            c["charpoly"] = tpoly_coeff_strings(cp);
            c["charpoly_display"] = tpoly_display(cp);
            c["charpoly_mod_p"] = tpoly_coeff_strings(cpp);
            c["charpoly_mod_p_display"] = tpoly_display(cpp);
            comps.push_back(std::move(c));

            lines.push_back(component_heading(comp) + ":");
            lines.push_back("  matrix:");
            for (const std::string& row : matrix_rows(lca.matrix))
                lines.push_back("    " + row);
            lines.push_back("  charpoly: " + tpoly_display(cp));
            lines.push_back("  charpoly mod " + std::to_string(comp.p) + ": " +
                            tpoly_display(cpp));
        }
        result["components"] = std::move(comps);
    }
    return finish(job, "charpoly", std::move(result), lines);
}

RunOutcome run_invariants(const JobSpec& job) {
    ojson result;
    std::vector<std::string> lines;
    if (job.kind == JobSpec::Kind::lca) {
        ojson per = ojson::array();
        for (const PrimePower& pp : factor(job.lca->modulus().value())) {
            InvariantConsistency ic = check_invariants(job.lca->matrix.reduced_mod(pp.p));
            per.push_back(invariants_json_entry(pp.p, pp.k, ic));
            invariants_text(lines, "", pp.p, ic);
        }
        result["per_prime"] = std::move(per);
    } else {
        require_valid_additive(*job.additive);
        ojson comps = ojson::array();
        for (const PrimaryComponent& comp : primary_decompose(job.additive->group)) {
            LcaRule lca = associated_lca(comp, *job.additive);
            InvariantConsistency ic = check_invariants(lca.matrix.reduced_mod(comp.p));
            ojson c = component_header_json(comp);
            c["invariants"] = invariants_json_entry(comp.p, comp.exponents[0], ic);
            comps.push_back(std::move(c));
            lines.push_back(component_heading(comp) + ":");
            invariants_text(lines, "  ", comp.p, ic);
        }
        result["components"] = std::move(comps);
    }
    return finish(job, "invariants", std::move(result), lines);
}

OracleOptions oracle_options(const JobSpec& job) {
    OracleOptions o;
    o.parallel = job.parallel;
    o.seed = job.budgets.seed;
    return o;
}

RunOutcome run_oracle(const JobSpec& job) {
    ojson result;
    std::vector<std::string> lines;
    OracleOptions opts = oracle_options(job);
    ojson budgets = budgets_json(job.budgets);
    lines.push_back(budgets_text(job.budgets));
    if (job.kind == JobSpec::Kind::lca) {
        VerifyResult vr = verify_window(*job.lca, job.budgets.lhat, opts);
        FalsifyResult fr = falsify(*job.lca, job.budgets.width, job.budgets.steps, opts);
        result["verify"] = verify_json(vr);
        result["falsify"] = falsify_json(fr);
        lines.push_back(verify_text(vr));
        falsify_text(lines, "", fr);
    } else {
        require_valid_additive(*job.additive);
        ojson comps = ojson::array();
        for (const PrimaryComponent& comp : primary_decompose(job.additive->group)) {
            LcaRule lca = associated_lca(comp, *job.additive);
            VerifyResult vr = verify_window(lca, job.budgets.lhat, opts);
            FalsifyResult fr = falsify(lca, job.budgets.width, job.budgets.steps, opts);
            ojson c = component_header_json(comp);
            c["verify"] = verify_json(vr);
            c["falsify"] = falsify_json(fr);
            comps.push_back(std::move(c));
            lines.push_back(component_heading(comp) + ":");
            lines.push_back("  " + verify_text(vr));
            falsify_text(lines, "  ", fr);
        }
        result["components"] = std::move(comps);
    }
    return finish(job, "oracle", std::move(result), lines, &budgets);
}

RunOutcome run_embed(const JobSpec& job) {
    if (job.kind != JobSpec::Kind::additive)
        throw JobError("embed requires an additive job");
    ojson result;
    std::vector<std::string> lines;
    if (auto violation = validate_rule(*job.additive)) {
        result["valid"] = false;
        result["violation"] = violation->describe();
        lines.push_back("valid: no");
        lines.push_back("violation: " + violation->describe());
        return finish(job, "embed", std::move(result), lines);
    }
    result["valid"] = true;
    lines.push_back("valid: yes");
    ojson comps = ojson::array();
    for (const PrimaryComponent& comp : primary_decompose(job.additive->group)) {
        LcaRule lca = associated_lca(comp, *job.additive);
        ojson c = component_header_json(comp);
        ojson gens = ojson::array();
        lines.push_back(component_heading(comp) + ":");
        for (std::size_t i = 0; i < comp.dim(); ++i) {
            std::vector<std::uint64_t> unit(comp.dim(), 0);
            unit[i] = 1;
            std::vector<std::uint64_t> image = psi(comp, unit);
            gens.push_back(image);
            lines.push_back("  psi(e" + std::to_string(i + 1) + ") = " + bracket_list(image));
        }
        c["psi_generators"] = std::move(gens);
        c["matrix"] = matrix_json(lca.matrix);
        comps.push_back(std::move(c));
        lines.push_back("  matrix:");
        for (const std::string& row : matrix_rows(lca.matrix))
            lines.push_back("    " + row);
    }
    result["components"] = std::move(comps);
    return finish(job, "embed", std::move(result), lines);
}

RunOutcome run_crosscheck(const JobSpec& job) {
    ojson result;
    std::vector<std::string> lines;
    OracleOptions opts = oracle_options(job);
    ojson budgets = budgets_json(job.budgets);
    lines.push_back(budgets_text(job.budgets));
    std::vector<std::string> all_violations;

    auto check_one = [&](const LcaRule& lca, const std::string& prefix, ojson& into,
                         std::vector<std::string>& text, const std::string& indent) {
        Verdict v = decide_lca(lca);
        VerifyResult vr = verify_window(lca, job.budgets.lhat, opts);
        FalsifyResult fr = falsify(lca, job.budgets.width, job.budgets.steps, opts);
        into["positively_expansive"] = v.positively_expansive;
        ojson per = ojson::array();
        for (const PrimeBranch& b : v.per_prime) {
            per.push_back(prime_branch_json(b));
            prime_branch_text(text, indent, b);
        }
        into["per_prime"] = std::move(per);
        into["verify"] = verify_json(vr);
        into["falsify"] = falsify_json(fr);
        text.push_back(indent + verify_text(vr));
        falsify_text(text, indent, fr);

        std::vector<std::string> violations =
            dynamic_contradictions(v.positively_expansive, vr, fr);
        ojson inv = ojson::array();
        for (const PrimePower& pp : factor(lca.modulus().value())) {
            InvariantConsistency ic = check_invariants(lca.matrix.reduced_mod(pp.p));
            inv.push_back(invariants_json_entry(pp.p, pp.k, ic));
            invariants_text(text, indent, pp.p, ic);
            for (const std::string& w : ic.violations)
                violations.push_back("prime " + std::to_string(pp.p) + ": " + w);
        }
        into["invariants"] = std::move(inv);
        into["violations"] = violations;
        for (const std::string& w : violations)
            all_violations.push_back(prefix.empty() ? w : prefix + ": " + w);
        return v.positively_expansive;
    };

    if (job.kind == JobSpec::Kind::lca) {
        bool expansive = check_one(*job.lca, "", result, lines, "");
        lines.push_back("positively expansive: " + yesno(expansive));
    } else {
        require_valid_additive(*job.additive);
        bool expansive = true;
        ojson comps = ojson::array();
        for (const PrimaryComponent& comp : primary_decompose(job.additive->group)) {
            LcaRule lca = associated_lca(comp, *job.additive);
            ojson c = component_header_json(comp);
            lines.push_back(component_heading(comp) + ":");
            bool ok = check_one(lca, "component p=" + std::to_string(comp.p), c, lines, "  ");
            expansive = expansive && ok;
            comps.push_back(std::move(c));
        }
        result["positively_expansive"] = expansive;
        result["components"] = std::move(comps);
        lines.push_back("positively expansive: " + yesno(expansive));
    }
    result["consistent"] = all_violations.empty();
    result["violations"] = all_violations;
    for (const std::string& w : all_violations)
        lines.push_back("violation: " + w);
    lines.push_back("consistent: " + yesno(all_violations.empty()));
    return finish(job, "crosscheck", std::move(result), lines, &budgets,
                  all_violations.empty() ? 0 : 2);
}

} // namespace

JobSpec parse_job(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte);
        throw JobError(e.what(), line, col);
    }
    if (!j.is_object())
        throw JobError("job document must be a JSON object");
    std::string kind = require(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
    JobSpec job;
    if (kind == "lca") {
        check_keys(j, {"kind", "modulus", "n", "matrix", "budgets", "format"}, "job");
        job.kind = JobSpec::Kind::lca;
        job.lca = parse_lca(j);
    } else if (kind == "additive") {
        check_keys(j, {"kind", "group", "radius", "rules", "budgets", "format"}, "job");
        job.kind = JobSpec::Kind::additive;
        job.additive = parse_additive(j);
    } else {
        throw JobError("kind must be \"lca\" or \"additive\"");
    }
    if (j.contains("budgets")) {
        if (!j.at("budgets").is_object())
            throw JobError("budgets must be an object");
        job.budgets = parse_budgets(j.at("budgets"));
    }
    if (j.contains("format")) {
        const ojson& f = j.at("format");
        if (!f.is_string() || (f != "text" && f != "structured"))
            throw JobError("format must be \"text\" or \"structured\"");
        job.format = f == "text" ? ReportFormat::text : ReportFormat::structured;
    }
    return job;
}

RunOutcome run_command(const std::string& command, const JobSpec& job) {
    if (command == "decide")
        return run_decide(job);
    if (command == "charpoly")
        return run_charpoly(job);
    if (command == "invariants")
        return run_invariants(job);
    if (command == "oracle")
        return run_oracle(job);
    if (command == "embed")
        return run_embed(job);
    if (command == "crosscheck")
        return run_crosscheck(job);
    throw JobError("unknown command \"" + command + "\"");
}

InvariantConsistency check_invariants(const LaMatrix& a) {
    InvariantConsistency out;
    out.factors = invariant_factors(a);
    CharPoly cp = charpoly(a);

    for (std::size_t i = 0; i + 1 < out.factors.size(); ++i) {
        auto [q, rem] = tpoly_divmod(out.factors[i + 1], out.factors[i]);
        if (!rem.is_zero())
            out.violations.push_back("factor " + std::to_string(i + 2) +
                                     " is not divisible by factor " + std::to_string(i + 1));
    }

    Modulus m = a.modulus();
    RatFunc zero = RatFunc::from_poly(LaurentPoly(m));
    TPoly<RatFunc> product(zero, {RatFunc::from_poly(LaurentPoly::one(m))});
    for (const auto& f : out.factors)
        product = product * f;
    TPoly<RatFunc> cpf(zero);
    for (int i = 0; i <= cp.degree(); ++i)
        cpf.set_coeff(static_cast<std::size_t>(i),
                      RatFunc::from_poly(cp.coeff(static_cast<std::size_t>(i))));
    if (!(product == cpf))
        out.violations.push_back(
            "product of invariant factors differs from the characteristic polynomial");

    bool denominator_free = true;
    for (std::size_t i = 0; i < out.factors.size(); ++i)
        for (int d = 0; d <= out.factors[i].degree(); ++d)
            if (!out.factors[i].coeff(static_cast<std::size_t>(d)).is_polynomial()) {
                denominator_free = false;
                out.violations.push_back("factor " + std::to_string(i + 1) +
                                         " has a coefficient with a nontrivial denominator");
                break;
            }

    if (denominator_free) {
        bool conjunction = true;
        for (const auto& f : out.factors)
            conjunction = conjunction && is_expansive_poly(factor_as_laurent(f)).expansive;
        bool whole = is_expansive_poly(cp).expansive;
        if (conjunction != whole)
            out.violations.push_back("factorwise expansivity (" + yesno(conjunction) +
                                     ") disagrees with the characteristic polynomial test (" +
                                     yesno(whole) + ")");
    }
    return out;
}

std::vector<std::string> dynamic_contradictions(bool decided_expansive,
                                                const VerifyResult& verify,
                                                const FalsifyResult& falsify) {
    std::vector<std::string> out;
    if (decided_expansive && falsify.refuted()) {
        std::string sides = falsify.left && falsify.right ? "left and right"
                            : falsify.left               ? "left"
                                                         : "right";
        out.push_back("decider claims expansive but the oracle found a refuting witness (" +
                      sides + ")");
    }
    if (!decided_expansive && verify.verified)
        out.push_back("decider claims not expansive but window verification succeeded at level " +
                      std::to_string(verify.lhat));
    return out;
}

} // namespace posexp
