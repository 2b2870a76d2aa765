#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pidga/gains.hpp"
#include "pidga/rng.hpp"

namespace pidga {

using Genes = std::array<double, 3>;

/// One row of the population matrix: (kd, kp, ki | fitness).
struct Chromosome {
    Genes genes{};
    double fitness = 0.0;

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

using Population = std::vector<Chromosome>;

struct GaConfig {
    std::size_t pop_size = 80;
    std::size_t max_generations = 300;
    /// Probability of selecting the best-ranked chromosome.
    double selection_q = 0.08;
    /// Pairings per generation; 0 means pop_size / 2.
    std::size_t crossover_pairs_per_gen = 0;
    double mutation_prob = 0.001;
    std::size_t elite_count = 1;
    GeneBounds bounds;
    std::uint64_t rng_seed = 0;

    [[nodiscard]] std::size_t crossover_pairs() const {
        return crossover_pairs_per_gen == 0 ? pop_size / 2 : crossover_pairs_per_gen;
    }

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

struct GaResult {
    Chromosome best;
    /// Objective value of the best chromosome (1 / fitness).
    double best_index_value = 0.0;
    /// Best-so-far fitness after each generation.
    std::vector<double> fitness_history;
    /// Relative best-fitness gain over the final 50 generations was below 1e-9.
    bool converged = false;
    std::uint64_t seed = 0;

    friend bool operator==(const GaResult&, const GaResult&) = default;
};

/// Fitness assigned when an evaluation returns a non-finite or negative value.
inline constexpr double kGaPenalty = 1e-12;

inline constexpr std::size_t kConvergenceWindow = 50;
inline constexpr double kConvergenceTolerance = 1e-9;

/// P(rank r) = q' (1 - q)^(r - 1) with q' = q / (1 - (1 - q)^n), rank 1 best.
std::vector<double> geometric_selection_probs(std::size_t n, double q);

/// Whole-vector arithmetic crossover:
///   c1 = a p1 + (1 - a) p2,  c2 = (1 - a) p1 + a p2.
std::pair<Genes, Genes> arithmetic_crossover(const Genes& p1, const Genes& p2, double a);

/// Each gene is independently resampled uniformly within its bounds with
/// probability prob.
Genes mutate(const Genes& genes, const GeneBounds& bounds, double prob, Rng& rng);

/// Draws an index from a cumulative distribution (last entry treated as 1).
std::size_t sample_index(const std::vector<double>& cumulative, Rng& rng);

using FitnessFn = std::function<double(const Genes&)>;

/// Real-coded GA: uniform initialization within bounds, normalized geometric
/// ranking selection, arithmetic crossover, uniform mutation, elitism, and
/// termination after max_generations.  Non-finite fitness is replaced by the
/// penalty value.
GaResult run_ga(const GaConfig& config, const FitnessFn& evaluate);

}  // namespace pidga
