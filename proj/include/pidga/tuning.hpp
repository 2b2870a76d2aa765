#pragma once

#include "pidga/ga.hpp"
#include "pidga/lti.hpp"
#include "pidga/metrics.hpp"
#include "pidga/tuners.hpp"

namespace pidga {

/// Closed-loop unit-step response of PID(gains) * plant with the plant delay
/// modelled by the second-order DFR all-pass.  Throws std::invalid_argument
/// for all-zero gains.
StepResponse simulate_pid_loop(const PidGains& gains, const PlantFolpd& plant, double dt,
                               double horizon);

/// Same loop with the delay realized exactly as a sample shift.
StepResponse simulate_pid_loop_exact(const PidGains& gains, const PlantFolpd& plant, double dt,
                                     double horizon);

/// Stability margin of PID(gains) * plant * DFR(delay).
double pid_stability_margin(const PidGains& gains, const PlantFolpd& plant);

/// GA fitness for one objective: 1 / index of the DFR closed loop, with the
/// divergence penalty.  All-zero gains are penalized as well.
FitnessFn make_objective(const PlantFolpd& plant, ObjectiveKind kind, double dt, double horizon);

}  // namespace pidga
