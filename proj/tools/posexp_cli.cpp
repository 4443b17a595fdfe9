#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "posexp/job.hpp"

namespace {

struct Options {
    std::string input = "-";
    unsigned lhat = 0;
    unsigned width = 0;
    unsigned steps = 0;
    std::uint64_t seed = 0;
    std::string format;
    bool serial = false;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open input file \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decide positive expansivity of linear and additive cellular automata"};
    app.require_subcommand(1);
    Options opt;

    const std::pair<const char*, const char*> commands[] = {
        {"decide", "algebraic expansivity decision"},
        {"charpoly", "characteristic polynomial of the rule matrix"},
        {"invariants", "invariant factors with consistency checks"},
        {"oracle", "bounded dynamical verification and falsification"},
        {"embed", "primary components and associated matrices"},
        {"crosscheck", "decision, oracle and invariant factors cross-validated"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("input", opt.input, "job file, \"-\" for stdin")->capture_default_str();
        sub->add_option("--budget-lhat", opt.lhat, "window verification level budget");
        sub->add_option("--budget-width", opt.width, "falsification window width");
        sub->add_option("--budget-steps", opt.steps, "falsification step budget");
        sub->add_option("--seed", opt.seed, "seed for sampled falsification");
        sub->add_option("--format", opt.format, "report format")
            ->check(CLI::IsMember({"text", "structured"}));
        sub->add_flag("--serial", opt.serial, "disable the parallel oracle kernels");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        posexp::JobSpec job = posexp::parse_job(read_input(opt.input));
        if (sub->count("--budget-lhat"))
            job.budgets.lhat = opt.lhat;
        if (sub->count("--budget-width"))
            job.budgets.width = opt.width;
        if (sub->count("--budget-steps"))
            job.budgets.steps = opt.steps;
        if (sub->count("--seed"))
            job.budgets.seed = opt.seed;
        if (sub->count("--format"))
            job.format = opt.format == "structured" ? posexp::ReportFormat::structured
                                                    : posexp::ReportFormat::text;
        job.parallel = !opt.serial;

        posexp::RunOutcome out = posexp::run_command(sub->get_name(), job);
        std::cout << out.output;
        return out.exit_code;
    } catch (const posexp::JobError& e) {
        std::cerr << "error: " << e.display() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
