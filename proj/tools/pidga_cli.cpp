// Command-line harness for the GA / Ziegler-Nichols tuning experiment.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pidga/config.hpp"
#include "pidga/experiment.hpp"
#include "pidga/report_io.hpp"
#include "pidga/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitInvalidRow = 3;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> pop_size;
    std::optional<std::size_t> generations;
    std::optional<std::size_t> threads;
};

pidga::ExperimentConfig resolve(const CommonOptions& o) {
    pidga::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = pidga::load_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.out) cfg.output_dir = *o.out;
    if (o.pop_size) cfg.ga.pop_size = *o.pop_size;
    if (o.generations) cfg.ga.max_generations = *o.generations;
    if (o.threads) cfg.threads = *o.threads;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw pidga::ConfigError(e.what());
    }
    return cfg;
}

void print_row(const pidga::SweepRow& r) {
    using pidga::format_number;
    std::printf("%-8s delay=%-6s kd=%-10s kp=%-10s ki=%-10s", r.method.c_str(),
                format_number(r.delay).c_str(), format_number(r.gains.kd).c_str(),
                format_number(r.gains.kp).c_str(), format_number(r.gains.ki).c_str());
    std::printf(" MSE=%s IAE=%s ISE=%s ITAE=%s ITSE=%s", format_number(r.indices.mse).c_str(),
                format_number(r.indices.iae).c_str(), format_number(r.indices.ise).c_str(),
                format_number(r.indices.itae).c_str(), format_number(r.indices.itse).c_str());
    if (r.valid) {
        std::printf(" PO=%s%% ST=%s RT=%s PT=%s SM=%s",
                    format_number(r.measures.percent_overshoot).c_str(),
                    format_number(r.measures.settling_time_5pct).c_str(),
                    format_number(r.measures.rise_time_0_95).c_str(),
                    format_number(r.measures.peak_time).c_str(),
                    format_number(r.measures.stability_margin).c_str());
    } else {
        std::printf(" INVALID (%s)", r.note.c_str());
    }
    if (r.objective) std::printf(" converged=%d seed=%llu", r.converged ? 1 : 0,
                                 static_cast<unsigned long long>(r.seed));
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PID tuning by real-coded genetic algorithm on delayed first-order plants"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    app.add_option("--config", common.config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", common.seed, "master RNG seed");
    app.add_option("--out", common.out, "output directory");
    app.add_option("--pop-size", common.pop_size, "chromosomes per generation");
    app.add_option("--generations", common.generations, "maximum generations");
    app.add_option("--threads", common.threads, "worker threads (0 = all cores)");

    auto* sweep = app.add_subcommand("sweep", "full delay x objective experiment with CSV and SVG output");
    bool no_plots = false;
    sweep->add_flag("--no-plots", no_plots, "skip SVG output");

    auto* tune = app.add_subcommand("tune", "GA tuning for a single delay and objective");
    double tune_delay = 0.1;
    std::string tune_objective = "ISE";
    tune->add_option("--delay", tune_delay, "plant delay in seconds")->required();
    tune->add_option("--objective", tune_objective, "MSE, IAE, ISE, ITAE or ITSE")->required();

    app.add_subcommand("baseline", "Ziegler-Nichols rows for the configured delays");
    app.add_subcommand("validate", "oracle cross-checks of the delay model and margin search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    pidga::ExperimentConfig cfg;
    try {
        cfg = resolve(common);
    } catch (const pidga::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitBadConfig;
    }

    try {
        if (*sweep) {
            std::cerr << "sweep: " << cfg.delays.size() << " delays x " << cfg.objectives.size()
                      << " objectives, seed " << cfg.seed << '\n';
            const pidga::SweepReport report = pidga::run_sweep(cfg);
            for (const auto& row : report.rows) print_row(row);
            for (const auto& p : pidga::emit_csv(report, cfg.output_dir))
                std::cerr << "wrote " << p.string() << '\n';
            if (!no_plots && report.delays.size() >= 2) {
                std::vector<pidga::ReferenceSeries> reference;
                if (cfg.reference_csv) reference = pidga::read_reference_csv(*cfg.reference_csv);
                for (const auto& p : pidga::emit_plots(report, cfg.output_dir, reference))
                    std::cerr << "wrote " << p.string() << '\n';
            }
            return report.invalid_rows() > 0 ? kExitInvalidRow : kExitOk;
        }
        if (app.got_subcommand("tune")) {
            const auto kind = pidga::parse_objective(tune_objective);
            if (!kind) {
                std::cerr << "invalid config: unknown objective '" << tune_objective << "'\n";
                return kExitBadConfig;
            }
            if (!(tune_delay > 0.0)) {
                std::cerr << "invalid config: delay must be positive\n";
                return kExitBadConfig;
            }
            print_row(pidga::baseline_row(cfg, tune_delay));
            const auto seed = pidga::derive_seed(cfg.seed, 0, pidga::objective_index(*kind));
            const auto outcome = pidga::tune_case(cfg, tune_delay, *kind, seed);
            print_row(outcome.row);
            return outcome.row.valid ? kExitOk : kExitInvalidRow;
        }
        if (app.got_subcommand("baseline")) {
            bool all_valid = true;
            for (double d : cfg.delays) {
                const auto row = pidga::baseline_row(cfg, d);
                all_valid = all_valid && row.valid;
                print_row(row);
            }
            return all_valid ? kExitOk : kExitInvalidRow;
        }
        if (app.got_subcommand("validate")) {
            bool ok = true;
            for (const auto& c : pidga::run_validation(cfg.plant, cfg.dt, cfg.horizon)) {
                std::printf("[%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                            c.detail.c_str());
                ok = ok && c.passed;
            }
            return ok ? kExitOk : kExitFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
