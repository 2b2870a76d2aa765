#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pidga/experiment.hpp"

namespace pidga {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Applies `key = value` lines on top of `base`.  Blank lines and text after
/// '#' are ignored.  Unknown keys, malformed values and settings rejected by
/// ExperimentConfig::validate() raise ConfigError.
///
/// Keys: plant_gain, plant_time_constant, delays (comma list), objectives
/// (comma list of MSE/IAE/ISE/ITAE/ITSE), dt, horizon, pop_size,
/// max_generations, selection_q, crossover_pairs, mutation_prob, elite_count,
/// bounds_factor, seed, output_dir, threads, reference_csv.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

}  // namespace pidga
