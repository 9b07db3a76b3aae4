#ifndef FBS_EXPERIMENTS_HPP
#define FBS_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ladder.hpp"

namespace fbs {

inline constexpr const char* kVersion = "0.1.0";

// A named experiment run: figure data, oracle cross-checks, Monte Carlo
// heralding, stop-band validation, or a tomography round trip.
struct ExperimentSpec {
    std::string name;
    std::string config_path;  // empty = defaults
    std::string out_dir = ".";
    std::vector<std::pair<std::string, std::string>> overrides;
    std::uint64_t seed = 0;

    static const std::vector<std::string>& known_names();
};

struct ExperimentResult {
    bool pass = false;
    std::string summary;
    std::vector<std::string> outputs;  // paths written, manifest last
};

ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace fbs

#endif
