#include "pidga/tuning.hpp"

#include "pidga/delay.hpp"

namespace pidga {

StepResponse simulate_pid_loop(const PidGains& gains, const PlantFolpd& plant, double dt,
                               double horizon) {
    const TransferFunction t = closed_loop(pid_tf(gains), plant.lag_tf(), dfr_delay(plant.delay).tf);
    return step_response(t, dt, horizon);
}

StepResponse simulate_pid_loop_exact(const PidGains& gains, const PlantFolpd& plant, double dt,
                                     double horizon) {
    return delayed_closed_loop_step(pid_tf(gains) * plant.lag_tf(), plant.delay, dt, horizon);
}

double pid_stability_margin(const PidGains& gains, const PlantFolpd& plant) {
    return stability_margin(pid_tf(gains), plant.lag_tf(), dfr_delay(plant.delay).tf);
}

FitnessFn make_objective(const PlantFolpd& plant, ObjectiveKind kind, double dt, double horizon) {
    return [plant, kind, dt, horizon](const Genes& g) {
        const PidGains gains = PidGains::from_genes(g);
        if (gains.kd == 0.0 && gains.kp == 0.0 && gains.ki == 0.0) return kFitnessPenalty;
        const TransferFunction t =
            closed_loop(pid_tf(gains), plant.lag_tf(), dfr_delay(plant.delay).tf);
        // fast unstable poles can sit inside the solver's damped region and never blow up
        if (!routh_stable(t.den())) return kFitnessPenalty;
        const StepResponse r = step_response(t, dt, horizon);
        return fitness(indices(r).get(kind), r.diverged);
    };
}

}  // namespace pidga
