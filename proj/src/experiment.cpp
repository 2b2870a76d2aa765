#include "pidga/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pidga/tuning.hpp"

namespace pidga {

void ExperimentConfig::validate() const {
    if (delays.empty()) throw std::invalid_argument("no delays configured");
    for (std::size_t i = 0; i < delays.size(); ++i) {
        if (!(delays[i] > 0.0)) throw std::invalid_argument("delays must be positive");
        if (i > 0 && !(delays[i] > delays[i - 1]))
            throw std::invalid_argument("delays must be sorted ascending without repeats");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(horizon >= dt)) throw std::invalid_argument("horizon must be at least dt");
    if (!(plant.gain > 0.0)) throw std::invalid_argument("plant gain must be positive");
    if (!(plant.time_constant > 0.0))
        throw std::invalid_argument("plant time constant must be positive");
    if (!(bounds_factor > 1.0)) throw std::invalid_argument("bounds factor must exceed 1");
    GaConfig probe = ga;
    probe.bounds = bounds_from_baseline({1.0, 1.0, 1.0}, bounds_factor);
    probe.validate();
}

std::uint64_t case_seed(std::uint64_t master, std::size_t delay_index, std::size_t objective_index) {
    return derive_seed(master, delay_index, objective_index);
}

std::uint64_t retry_seed(std::uint64_t master, std::size_t delay_index, std::size_t objective_index) {
    return derive_seed(master ^ 0x5bd1e9955bd1e995ULL, delay_index, objective_index);
}

std::string ga_method_name(ObjectiveKind kind) {
    return "GA-" + std::string(to_string(kind));
}

const SweepRow* SweepReport::find(double delay, const std::string& method) const {
    for (const SweepRow& r : rows)
        if (r.delay == delay && r.method == method) return &r;
    return nullptr;
}

std::size_t SweepReport::invalid_rows() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.valid; }));
}

std::vector<MethodAverage> method_averages(const SweepReport& report) {
    std::vector<MethodAverage> out;
    for (const std::string& method : report.methods) {
        MethodAverage avg;
        avg.method = method;
        avg.measures.stability_margin = 0.0;
        for (const SweepRow& r : report.rows) {
            if (r.method != method || !r.valid) continue;
            ++avg.count;
            avg.indices.mse += r.indices.mse;
            avg.indices.iae += r.indices.iae;
            avg.indices.ise += r.indices.ise;
            avg.indices.itae += r.indices.itae;
            avg.indices.itse += r.indices.itse;
            avg.measures.percent_overshoot += r.measures.percent_overshoot;
            avg.measures.settling_time_5pct += r.measures.settling_time_5pct;
            avg.measures.rise_time_0_95 += r.measures.rise_time_0_95;
            avg.measures.peak_time += r.measures.peak_time;
            avg.measures.steady_state_error += r.measures.steady_state_error;
            avg.measures.stability_margin += r.measures.stability_margin;
        }
        if (avg.count > 0) {
            const double n = static_cast<double>(avg.count);
            avg.indices.mse /= n;
            avg.indices.iae /= n;
            avg.indices.ise /= n;
            avg.indices.itae /= n;
            avg.indices.itse /= n;
            avg.measures.percent_overshoot /= n;
            avg.measures.settling_time_5pct /= n;
            avg.measures.rise_time_0_95 /= n;
            avg.measures.peak_time /= n;
            avg.measures.steady_state_error /= n;
            avg.measures.stability_margin /= n;
        } else {
            const double nan = std::nan("");
            avg.indices = {nan, nan, nan, nan, nan};
            avg.measures = {nan, nan, nan, nan, nan, nan};
        }
        out.push_back(avg);
    }
    return out;
}

SweepRow evaluate_gains(const PidGains& gains, const PlantFolpd& plant, double dt, double horizon) {
    SweepRow row;
    row.delay = plant.delay;
    row.gains = gains;
    const StepResponse resp = simulate_pid_loop(gains, plant, dt, horizon);
    row.indices = indices(resp);
    if (resp.diverged) {
        row.valid = false;
        row.note = "response diverged";
        return row;
    }
    try {
        row.measures = standard_measures(resp);
    } catch (const std::domain_error&) {
        row.valid = false;
        row.note = "non-positive final value";
        return row;
    }
    try {
        row.measures.stability_margin = pid_stability_margin(gains, plant);
    } catch (const std::domain_error&) {
        row.valid = false;
        row.measures.stability_margin = std::nan("");
        row.note = "nominal loop fails the stability test";
    }
    return row;
}

namespace {

PlantFolpd with_delay(const PlantFolpd& p, double delay) {
    PlantFolpd out = p;
    out.delay = delay;
    return out;
}

}  // namespace

SweepRow baseline_row(const ExperimentConfig& config, double delay) {
    const PlantFolpd plant = with_delay(config.plant, delay);
    SweepRow row = evaluate_gains(ziegler_nichols(plant), plant, config.dt, config.horizon);
    row.method = kZieglerNicholsMethod;
    return row;
}

TuneOutcome tune_case(const ExperimentConfig& config, double delay, ObjectiveKind objective,
                      std::uint64_t seed) {
    const PlantFolpd plant = with_delay(config.plant, delay);
    GaConfig ga = config.ga;
    ga.bounds = bounds_from_baseline(ziegler_nichols(plant), config.bounds_factor);
    ga.rng_seed = seed;
    GaResult result = run_ga(ga, make_objective(plant, objective, config.dt, config.horizon));

    SweepRow row =
        evaluate_gains(PidGains::from_genes(result.best.genes), plant, config.dt, config.horizon);
    row.method = ga_method_name(objective);
    row.objective = objective;
    row.converged = result.converged;
    row.seed = seed;
    return {std::move(row), std::move(result)};
}

SweepReport run_sweep(const ExperimentConfig& config) {
    config.validate();
    SweepReport report;
    report.delays = config.delays;
    report.master_seed = config.seed;
    report.methods.emplace_back(kZieglerNicholsMethod);
    for (ObjectiveKind k : config.objectives) report.methods.push_back(ga_method_name(k));

    const std::size_t per_delay = 1 + config.objectives.size();
    report.rows.resize(config.delays.size() * per_delay);

    // Each slot is written by exactly one task, so the result does not depend
    // on scheduling.
    const std::size_t tasks = report.rows.size();
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks && !failed; i = next++) {
            const std::size_t di = i / per_delay;
            const std::size_t slot = i % per_delay;
            try {
                if (slot == 0) {
                    report.rows[i] = baseline_row(config, config.delays[di]);
                } else {
                    const ObjectiveKind k = config.objectives[slot - 1];
                    report.rows[i] = tune_case(config, config.delays[di], k,
                                               case_seed(config.seed, di, objective_index(k))).row;
                }
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };

    std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, tasks);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return report;
}

}  // namespace pidga
