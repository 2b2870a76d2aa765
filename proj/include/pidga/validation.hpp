#pragma once

#include <string>
#include <vector>

#include "pidga/lti.hpp"
#include "pidga/tuners.hpp"

namespace pidga {

/// max_k |a.y[k] - b.y[k]| over the common samples.
double linf_distance(const StepResponse& a, const StepResponse& b);

/// Peak-to-peak output swing over samples with t in [from, to).
double swing(const StepResponse& r, double from, double to);

/// Largest | |H(jw)| - 1 | and largest |arg H(jw) + w tau| restricted to
/// w tau <= 1, over `points` log-spaced w in [w_lo, w_hi].
struct AllPassReport {
    double max_magnitude_error = 0.0;
    double max_phase_error = 0.0;
};
AllPassReport dfr_all_pass_check(double tau, double w_lo = 1e-2, double w_hi = 1e2,
                                 std::size_t points = 50);

/// One line of an oracle cross-check.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Oracle cross-checks run by the `validate` command.
std::vector<CheckResult> run_validation(const PlantFolpd& plant, double dt, double horizon);

}  // namespace pidga
