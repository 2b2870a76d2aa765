#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pidga/ga.hpp"
#include "pidga/metrics.hpp"
#include "pidga/tuners.hpp"

namespace pidga {

struct ExperimentConfig {
    /// Rational part of the plant; the swept delays replace plant.delay.
    PlantFolpd plant{1.0, 1.0, 0.0};
    std::vector<double> delays{0.01, 0.025, 0.05, 0.075, 0.1, 0.25, 0.5, 0.75, 1.0};
    std::vector<ObjectiveKind> objectives{kAllObjectives.begin(), kAllObjectives.end()};
    double dt = 0.01;
    double horizon = 15.0;
    /// Operator settings; bounds and rng_seed are filled per case.
    GaConfig ga;
    double bounds_factor = kDefaultBoundsFactor;
    std::uint64_t seed = 20061;
    std::filesystem::path output_dir = "results";
    /// Worker threads for independent GA runs; 0 picks hardware concurrency.
    std::size_t threads = 0;
    /// Optional external reference rows (e.g. another tuning method) to overlay on plots.
    std::optional<std::filesystem::path> reference_csv;

    /// Throws std::invalid_argument when the settings are unusable.
    void validate() const;
};

/// Seed for the GA run at (delay index, objective index).
std::uint64_t case_seed(std::uint64_t master, std::size_t delay_index, std::size_t objective_index);
/// Fixed alternate seed used when a case is re-run.
std::uint64_t retry_seed(std::uint64_t master, std::size_t delay_index, std::size_t objective_index);

inline constexpr const char* kZieglerNicholsMethod = "Z-N";
std::string ga_method_name(ObjectiveKind kind);

struct SweepRow {
    double delay = 0.0;
    std::string method;
    std::optional<ObjectiveKind> objective;
    PidGains gains;
    PerformanceIndices indices;
    StandardMeasures measures;
    bool converged = true;
    /// False when the response diverged, had no positive final value, or the
    /// nominal loop failed the stability test.
    bool valid = true;
    std::uint64_t seed = 0;
    std::string note;
};

struct MethodAverage {
    std::string method;
    std::size_t count = 0;
    PerformanceIndices indices;
    StandardMeasures measures;
};

struct SweepReport {
    std::vector<double> delays;
    /// Method names in column order: Z-N first, then one per objective.
    std::vector<std::string> methods;
    std::vector<SweepRow> rows;
    std::uint64_t master_seed = 0;

    [[nodiscard]] const SweepRow* find(double delay, const std::string& method) const;
    [[nodiscard]] std::size_t invalid_rows() const;
};

/// Arithmetic means over the valid rows of each method, in report.methods order.
std::vector<MethodAverage> method_averages(const SweepReport& report);

/// Simulates the DFR loop for `gains` and fills indices, measures and margin.
SweepRow evaluate_gains(const PidGains& gains, const PlantFolpd& plant, double dt, double horizon);

SweepRow baseline_row(const ExperimentConfig& config, double delay);

struct TuneOutcome {
    SweepRow row;
    GaResult ga;
};

/// GA run for one (delay, objective) with bounds around the Z-N gains.
TuneOutcome tune_case(const ExperimentConfig& config, double delay, ObjectiveKind objective,
                      std::uint64_t seed);

SweepReport run_sweep(const ExperimentConfig& config);

}  // namespace pidga
