#include "ablsem/cli.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include <CLI11.hpp>

#include "ablsem/report.hpp"

namespace ablsem {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::input:
    case ErrorKind::invalid_scenario:
    case ErrorKind::impossible_collapse:
        return exit_code::input_error;
    case ErrorKind::undefined_conditional:
    case ErrorKind::no_data:
        return exit_code::undefined_conditional;
    case ErrorKind::closest_world_nonexistent:
        return exit_code::closest_world_nonexistent;
    }
    return exit_code::input_error;
}

namespace {

struct Options {
    std::string file;
    std::string observable;
    bool json = false;
    bool no_intermediate = false;
    std::uint64_t runs = 0;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 0;
    double sigma = kDefaultSigmaLevel;
    double tol = kDefaultRealityTolerance;
    std::string relation = "natural";
    std::uint64_t entrants = 10'000'000;
};

Format format_of(const Options& o) { return o.json ? Format::json : Format::table; }

void require_quantum(const Scenario& sc, const std::string& command) {
    if (sc.kind != ScenarioKind::quantum) {
        throw InputError("'" + command + "' needs a quantum scenario; '" + sc.name + "' is classical");
    }
}

int cmd_abl(const Options& o, std::ostream& out) {
    const auto sc = load_scenario(o.file);
    require_quantum(sc, "abl");
    const AblReport report{sc.name, abl_distribution(sc.two_state(), sc.observable(o.observable))};
    out << render_report(report, format_of(o));
    return exit_code::success;
}

int cmd_simulate(const Options& o, const CLI::App& sub, std::ostream& out) {
    const auto sc = load_scenario(o.file);
    require_quantum(sc, "simulate");
    const Observable* intermediate = nullptr;
    if (!o.no_intermediate) {
        if (o.observable.empty()) {
            throw InputError("simulate: --observable is required unless --no-intermediate is given");
        }
        intermediate = &sc.observable(o.observable);
    }
    const std::uint64_t runs = sub.count("--runs") ? o.runs : sc.ensemble.runs;
    const std::uint64_t seed = sub.count("--seed") ? o.seed : sc.ensemble.seed;
    if (runs == 0) {
        throw InputError("simulate: --runs must be at least 1");
    }
    const auto report = evaluate_simulation(sc, intermediate, runs, seed, o.workers, o.sigma);
    out << render_report(report, format_of(o));
    return report.pass ? exit_code::success : exit_code::statistical_failure;
}

int cmd_reality(const Options& o, std::ostream& out) {
    const auto sc = load_scenario(o.file);
    RealityCommandReport report{sc.name, sc.kind, {}};
    report.reality.tolerance = o.tol;
    if (sc.kind == ScenarioKind::quantum) {
        report.reality = elements_of_reality(sc.two_state(), sc.observables, o.tol);
    } else if (!(o.tol > 0.0 && o.tol <= 1e-6)) {
        throw InputError("reality: tolerance must lie in (0, 1e-6]");
    }
    out << render_report(report, format_of(o));
    return exit_code::success;
}

int cmd_worlds(const Options& o, std::ostream& out) {
    const auto sc = load_scenario(o.file);
    const auto relation = parse_relation(o.relation);
    if (!relation) {
        throw InputError("unknown similarity relation '" + o.relation + "'");
    }
    if (sc.kind == ScenarioKind::quantum && o.observable.empty()) {
        throw InputError("worlds: --observable is required for quantum scenarios");
    }
    out << render_report(evaluate_worlds(sc, o.observable, *relation), format_of(o));
    return exit_code::success;
}

int cmd_lottery(const Options& o, std::ostream& out) {
    out << render_report(evaluate_lottery(o.entrants), format_of(o));
    return exit_code::success;
}

} // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pre- and post-selected ensembles: ABL probabilities, simulation and counterfactual semantics",
                 "ablsem"};
    app.require_subcommand(1);
    Options o;

    auto* abl = app.add_subcommand("abl", "ABL distribution of an intermediate measurement");
    abl->add_option("file", o.file, "scenario file")->required();
    abl->add_option("--observable", o.observable, "observable name")->required();
    abl->add_flag("--json", o.json, "structured output");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo ensemble compared with the ABL rule");
    sim->add_option("file", o.file, "scenario file")->required();
    sim->add_option("--observable", o.observable, "intermediate observable");
    sim->add_flag("--no-intermediate", o.no_intermediate, "skip the intermediate measurement");
    sim->add_option("--runs", o.runs, "number of trials (default: scenario setting)");
    sim->add_option("--seed", o.seed, "master seed (default: scenario setting, else " +
                                          std::to_string(kDefaultSeed) + ")");
    sim->add_option("--workers", o.workers, "worker threads, 0 = hardware concurrency");
    sim->add_option("--sigma", o.sigma, "pass threshold in binomial standard errors")
        ->check(CLI::PositiveNumber);
    sim->add_flag("--json", o.json, "structured output");

    auto* reality = app.add_subcommand("reality", "probability-1 outcomes with counterfactual validity");
    reality->add_option("file", o.file, "scenario file")->required();
    reality->add_option("--tol", o.tol, "probability-1 tolerance, in (0, 1e-6]");
    reality->add_flag("--json", o.json, "structured output");

    auto* worlds = app.add_subcommand("worlds", "possible worlds, spheres and counterfactual evaluation");
    worlds->add_option("file", o.file, "scenario file")->required();
    worlds->add_option("--observable", o.observable, "intermediate observable (quantum scenarios)");
    worlds->add_option("--sr", o.relation, "similarity relation")
        ->check(CLI::IsMember({"natural", "z", "likelihood"}));
    worlds->add_flag("--json", o.json, "structured output");

    auto* lottery = app.add_subcommand("lottery", "sole-entrant lottery counterfactual");
    lottery->add_option("--entrants", o.entrants, "number of entrants in the actual draw")
        ->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max()));
    lottery->add_flag("--json", o.json, "structured output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::input_error;
    }

    try {
        if (abl->parsed()) {
            return cmd_abl(o, out);
        }
        if (sim->parsed()) {
            return cmd_simulate(o, *sim, out);
        }
        if (reality->parsed()) {
            return cmd_reality(o, out);
        }
        if (worlds->parsed()) {
            return cmd_worlds(o, out);
        }
        return cmd_lottery(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
}

} // namespace ablsem
