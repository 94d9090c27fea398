#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xylab/table.hpp"

namespace xylab::cli {

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;
    bool log_spaced = false;

    std::vector<double> values() const;
};

/// Parsed command-line / config-file state. One command per run:
/// spectrum | thermal | concurrence | sweep | transitions | critical |
/// table1 | revival.
struct RunConfig {
    std::string command;

    int n_qubits = 4;
    double gamma = 0.5;
    double eta = 0.0;
    double coupling = 1.0;
    double temperature = 0.0;  // 0 selects the exact zero-temperature state

    std::vector<double> t_list;
    std::vector<double> eta_list;
    std::optional<GridSpec> eta_grid;
    std::optional<GridSpec> gamma_grid;
    std::optional<GridSpec> t_grid;

    std::string kind = "multipartite";  // concurrence operator: multipartite | full
    std::string method = "exact";       // exact | approx | upper
    int trials = 100;

    std::string output_path;  // empty -> stdout
    std::string format = "csv";
    std::uint64_t seed = 20080904;
    int threads = 1;
};

/// Exit codes: 0 success, 1 usage error, 2 computation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;

/// Parses argv (plus an optional `--config file` of flat key = value lines;
/// flags override file values, unknown keys are rejected by name). Throws
/// std::invalid_argument with a usage message on bad input.
RunConfig parse_config(int argc, const char* const* argv);

/// Computes the table for a parsed config. Deterministic for a given
/// config + seed, independent of the thread count.
io::Table compute(const RunConfig& config);

/// compute() + serialize + write to the configured destination.
int run(const RunConfig& config);

/// Full entry point: parse, run, map errors to exit codes.
int main_entry(int argc, const char* const* argv);

}  // namespace xylab::cli
