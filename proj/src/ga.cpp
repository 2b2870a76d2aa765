#include "pidga/ga.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pidga {

void GaConfig::validate() const {
    if (pop_size < 2) throw std::invalid_argument("population needs at least 2 chromosomes");
    if (max_generations < 1) throw std::invalid_argument("max_generations must be positive");
    if (!(selection_q > 0.0 && selection_q < 1.0))
        throw std::invalid_argument("selection_q must lie in (0, 1)");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
        throw std::invalid_argument("mutation_prob must lie in [0, 1]");
    if (elite_count >= pop_size) throw std::invalid_argument("elite_count must be below pop_size");
    for (const Interval& iv : bounds.gene)
        if (!(iv.low >= 0.0 && iv.low < iv.high) || !std::isfinite(iv.high))
            throw std::invalid_argument("gene bounds must satisfy 0 <= low < high");
}

std::vector<double> geometric_selection_probs(std::size_t n, double q) {
    if (n == 0) throw std::invalid_argument("selection over an empty population");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in (0, 1)");
    const double norm = q / (1.0 - std::pow(1.0 - q, static_cast<double>(n)));
    std::vector<double> p(n);
    double w = norm;
    for (std::size_t r = 0; r < n; ++r) {
        p[r] = w;
        w *= 1.0 - q;
    }
    return p;
}

std::pair<Genes, Genes> arithmetic_crossover(const Genes& p1, const Genes& p2, double a) {
    Genes c1{}, c2{};
    for (std::size_t i = 0; i < 3; ++i) {
        c1[i] = a * p1[i] + (1.0 - a) * p2[i];
        c2[i] = (1.0 - a) * p1[i] + a * p2[i];
    }
    return {c1, c2};
}

Genes mutate(const Genes& genes, const GeneBounds& bounds, double prob, Rng& rng) {
    Genes out = genes;
    for (std::size_t i = 0; i < 3; ++i)
        if (rng.bernoulli(prob)) out[i] = rng.uniform(bounds[i].low, bounds[i].high);
    return out;
}

std::size_t sample_index(const std::vector<double>& cumulative, Rng& rng) {
    const double u = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

namespace {

Genes clamp_to(const Genes& g, const GeneBounds& b) {
    Genes out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = std::clamp(g[i], b[i].low, b[i].high);
    return out;
}

double sanitized(double f) {
    return std::isfinite(f) && f >= 0.0 ? f : kGaPenalty;
}

}  // namespace

GaResult run_ga(const GaConfig& config, const FitnessFn& evaluate) {
    config.validate();
    Rng rng(config.rng_seed);
    const std::size_t n = config.pop_size;
    const GeneBounds& bounds = config.bounds;

    std::vector<double> cumulative = geometric_selection_probs(n, config.selection_q);
    for (std::size_t i = 1; i < n; ++i) cumulative[i] += cumulative[i - 1];

    Population pop(n);
    for (Chromosome& c : pop)
        for (std::size_t i = 0; i < 3; ++i) c.genes[i] = rng.uniform(bounds[i].low, bounds[i].high);
    // Elites carry their fitness forward; evaluation is deterministic.
    std::vector<bool> evaluated(n, false);

    GaResult result;
    result.seed = config.rng_seed;
    result.fitness_history.reserve(config.max_generations);
    bool have_best = false;

    for (std::size_t gen = 0; gen < config.max_generations; ++gen) {
        for (std::size_t i = 0; i < n; ++i)
            if (!evaluated[i]) pop[i].fitness = sanitized(evaluate(pop[i].genes));
        std::stable_sort(pop.begin(), pop.end(), [](const Chromosome& a, const Chromosome& b) {
            return a.fitness > b.fitness;
        });
        if (!have_best || pop.front().fitness > result.best.fitness) {
            result.best = pop.front();
            have_best = true;
        }
        result.fitness_history.push_back(result.best.fitness);
        if (gen + 1 == config.max_generations) break;

        Population next;
        next.reserve(n);
        next.insert(next.end(), pop.begin(),
                    pop.begin() + static_cast<std::ptrdiff_t>(config.elite_count));

        Population pool;
        pool.reserve(n - config.elite_count);
        for (std::size_t i = config.elite_count; i < n; ++i) pool.push_back(pop[sample_index(cumulative, rng)]);

        const std::size_t pairs = std::min(config.crossover_pairs(), pool.size() / 2);
        for (std::size_t p = 0; p < pairs; ++p) {
            const double a = rng.uniform();
            auto [c1, c2] = arithmetic_crossover(pool[2 * p].genes, pool[2 * p + 1].genes, a);
            pool[2 * p].genes = clamp_to(c1, bounds);
            pool[2 * p + 1].genes = clamp_to(c2, bounds);
        }
        for (Chromosome& c : pool) c.genes = mutate(c.genes, bounds, config.mutation_prob, rng);

        next.insert(next.end(), pool.begin(), pool.end());
        pop = std::move(next);
        std::fill(evaluated.begin(), evaluated.end(), false);
        std::fill(evaluated.begin(), evaluated.begin() + static_cast<std::ptrdiff_t>(config.elite_count), true);
    }

    result.best_index_value = 1.0 / result.best.fitness;
    const auto& h = result.fitness_history;
    const std::size_t back = std::min(kConvergenceWindow, h.size() - 1);
    const double before = h[h.size() - 1 - back];
    result.converged = (h.back() - before) <= kConvergenceTolerance * std::abs(before);
    return result;
}

}  // namespace pidga
