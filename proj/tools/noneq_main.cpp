#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "noneq/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"non-equilibrium structure analysis for finite continuous-time Markov chains"};
    app.require_subcommand(1);

    noneq::AnalyzeOptions analyze;
    auto* cmd_analyze = app.add_subcommand(
        "analyze", "stationary distribution, currents, cycle decomposition, ring solver");
    cmd_analyze->add_option("input", analyze.input, "chain document (path or '-' for stdin)")
        ->required();
    cmd_analyze->add_flag("--csv", analyze.csv, "input is a CSV rate matrix");
    cmd_analyze->add_flag("--exact", analyze.exact, "exact rational arithmetic");
    cmd_analyze->add_flag("--json", analyze.json, "machine-readable report");
    double analyze_tol = -1.0;
    cmd_analyze->add_option("--tol", analyze_tol, "zero tolerance override (float mode)");

    noneq::SynthOptions synth;
    auto* cmd_synth =
        app.add_subcommand("synth", "construct a chain with prescribed non-equilibrium structure");
    cmd_synth->add_option("--regime", synth.regime,
                          "equilibrium | one-ne | k-ne | generic (default one-ne)");
    cmd_synth->add_option("--n", synth.n, "number of states")->check(CLI::Range(3, 1000));
    cmd_synth->add_option("--k", synth.k, "shift for the k-ne regime");
    cmd_synth->add_option("--seed", synth.seed, "randomness seed");
    cmd_synth->add_option("--out,-o", synth.output, "output path (default stdout)");
    cmd_synth->add_option("--name", synth.name, "document name");

    noneq::SimulateOptions simulate;
    auto* cmd_simulate =
        app.add_subcommand("simulate", "sample trajectories and compare empirical currents");
    cmd_simulate->add_option("input", simulate.input, "chain document (path or '-')")->required();
    cmd_simulate->add_flag("--csv", simulate.csv, "input is a CSV rate matrix");
    cmd_simulate->add_flag("--json", simulate.json, "machine-readable report");
    cmd_simulate->add_option("--horizon", simulate.horizon, "simulated time span");
    cmd_simulate->add_option("--seed", simulate.seed, "base seed; runs use streams 0..runs-1");
    cmd_simulate->add_option("--runs", simulate.runs, "number of independent streams");
    cmd_simulate->add_option("--start", simulate.start, "initial state (1-based)");

    noneq::CyclesOptions cycles;
    auto* cmd_cycles = app.add_subcommand(
        "cycles", "print the edge index, incidence matrix, basis cycles and cycle matrices");
    // The dump grows like n^4; keep it at terminal scale.
    cmd_cycles->add_option("--n", cycles.n, "number of states")->check(CLI::Range(2, 64));
    int cycles_k = 0;
    cmd_cycles->add_option("--k", cycles_k, "also show the k-cycle machinery");
    cmd_cycles->add_flag("--json", cycles.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : noneq::kExitInputError;
    }

    try {
        if (cmd_analyze->parsed()) {
            if (analyze_tol > 0.0) analyze.tol = analyze_tol;
            return noneq::run_analyze(analyze, std::cout, std::cerr);
        }
        if (cmd_synth->parsed()) return noneq::run_synth(synth, std::cout, std::cerr);
        if (cmd_simulate->parsed()) return noneq::run_simulate(simulate, std::cout, std::cerr);
        if (cmd_cycles->parsed()) {
            if (cycles_k > 0) cycles.k = cycles_k;
            return noneq::run_cycles(cycles, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return noneq::kExitNumericError;
    }
    return noneq::kExitInputError;
}
