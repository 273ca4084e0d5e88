#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cellcache/simulator.hpp"

namespace cellcache {

struct SweepSpec {
    SimConfig base;
    std::vector<double> zipf_values;
    std::vector<std::size_t> capacity_values;
    std::vector<Scheme> schemes;
    std::vector<std::uint64_t> seeds;

    void validate() const;
};

struct LoadedConfig {
    SimConfig sim;
    SweepSpec sweep;       // lists default to singletons taken from sim
    bool master_seed_set = false;
};

/// Flat `key = value` configuration, UTF-8, `#` comments, one key per line.
/// Unknown keys are errors; missing keys keep the defaults.
LoadedConfig parse_config_text(std::string_view text);

LoadedConfig load_config(const std::string& path);

SimConfig default_config();

/// Validation warnings for a parsed configuration (learning-rate conditions,
/// per-instant request probabilities). Errors throw from validate() instead.
std::vector<std::string> config_warnings(const LoadedConfig& cfg);

}  // namespace cellcache
