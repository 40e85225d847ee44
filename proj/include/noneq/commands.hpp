#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace noneq {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericError = 3;

struct AnalyzeOptions {
    std::string input;  // path or "-" for stdin
    bool csv = false;
    bool exact = false;
    bool json = false;
    std::optional<double> tol;
};

struct SynthOptions {
    std::string regime = "one-ne";
    int n = 5;
    int k = 1;
    std::uint64_t seed = 0;
    std::string output = "-";  // path or "-" for stdout
    std::string name;
};

struct SimulateOptions {
    std::string input;
    bool csv = false;
    bool json = false;
    double horizon = 1e5;
    std::uint64_t seed = 1;
    int runs = 3;
    int start = 1;
};

struct CyclesOptions {
    int n = 4;
    std::optional<int> k;
    bool json = false;
};

int run_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err);
int run_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int run_cycles(const CyclesOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace noneq
