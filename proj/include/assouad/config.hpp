#pragma once

#include "assouad/carpet.hpp"
#include "assouad/fullshift.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace assouad {

enum class RunMode { Exact, Interval, Estimate };

struct Caps {
    EnumerationCaps enumeration;
    AutomatonCaps automaton;
    std::uint64_t exhaustive_limit = 10'000;
    std::uint64_t center_limit = 4096;
};

struct GridConfig {
    int k_max = 20;
    std::size_t n_max = 8;
    std::vector<double> thetas;  ///< strictly increasing, inside (0,1)
    std::size_t oracle_n_max = 2;
    int oracle_l_max = 3;
};

struct RunConfig {
    std::optional<CarpetSystem> carpet;
    std::optional<RealAlphabet> alphabet;
    GridConfig grid;
    Caps caps;
    RunMode mode = RunMode::Estimate;
    double slack = 0.1;
    std::string output_dir = "out";
    unsigned jobs = 1;
    std::string name = "system";
};

/// Parses "a:b:step" into an inclusive, strictly increasing theta list.
std::vector<double> parse_theta_grid(const std::string& spec);

RunMode parse_mode(const std::string& mode);
std::string to_string(RunMode mode);

/// Validates the whole document; the first offending field is named in the error.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig parse_config(const std::string& path);

}  // namespace assouad
