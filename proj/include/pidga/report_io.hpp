#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pidga/experiment.hpp"

namespace pidga {

/// Six significant digits; fixed notation when 1e-3 <= |x| < 1e6 (after
/// rounding) or x == 0, otherwise lowercase scientific ("1.23457e-05").
/// Trailing zeros in the fraction are dropped.  Non-finite values print as
/// inf, -inf or nan.
std::string format_number(double x);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

/// Writes measures.csv, indices.csv and rows.csv; returns the paths written.
/// Throws std::runtime_error when the directory cannot be created or written.
std::vector<std::filesystem::path> emit_csv(const SweepReport& report,
                                            const std::filesystem::path& dir);

/// One named series keyed by delay, read from an external CSV for overlay.
struct ReferenceSeries {
    std::string method;
    /// metric column name -> (delay, value) points
    std::map<std::string, std::vector<std::pair<double, double>>> metrics;
};

/// Reads rows of `method,delay,<metric>...` where metric columns are any of
/// po, st, rt, pt, sm, mse, iae, ise, itae, itse.  Throws std::runtime_error
/// on malformed input.
std::vector<ReferenceSeries> read_reference_csv(const std::filesystem::path& path);

struct PlotSpec {
    std::string file;
    std::string metric;
    std::string title;
    std::string y_label;
    bool log_y = false;
};

/// The ten plot files, measures first (fig3*) then indices (fig4*).
const std::vector<PlotSpec>& plot_specs();

/// Writes one SVG per plot_specs() entry.  Requires at least two delays.
std::vector<std::filesystem::path> emit_plots(const SweepReport& report,
                                              const std::filesystem::path& dir,
                                              const std::vector<ReferenceSeries>& reference = {});

/// Value of a named metric column for a row (po, st, rt, pt, sm, mse, ...).
double metric_value(const SweepRow& row, std::string_view metric);

}  // namespace pidga
