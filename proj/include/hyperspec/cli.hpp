#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperspec {

// One experiment invocation: a command plus the sampled-ensemble
// parameters. Seeds are dispatched to a worker pool (bounded by
// HYPERSPEC_THREADS); aggregation is sorted by seed, so outputs do not
// depend on completion order.
struct ExperimentSpec {
    std::string command;  // sample|gap|esd|nb-spectrum|walk-mix|expansion|local-law
    int n = 0;
    int d = 0;
    int k = 0;
    std::vector<std::uint64_t> seeds;
    int lmax = 40;
    int trials = 1000;
    double slack = 0.5;
    std::string output_dir = ".";
    std::string format = "json";  // json|csv
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidParameters = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInternal = 4;

// Runs the experiment, writing one file per seed plus summary.json into
// output_dir. Returns a process exit code; partial results are kept on
// failure.
int run(const ExperimentSpec& spec);

}  // namespace hyperspec
