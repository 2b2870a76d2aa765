#include "pidga/tuners.hpp"

#include <cmath>
#include <stdexcept>

namespace pidga {

TransferFunction PlantFolpd::lag_tf() const {
    return {Polynomial({gain}), Polynomial({time_constant, 1.0})};
}

PidGains ziegler_nichols(const PlantFolpd& plant) {
    if (!(plant.delay > 0.0))
        throw std::invalid_argument("Ziegler-Nichols reaction-curve rule needs a positive delay");
    if (!(plant.time_constant > 0.0))
        throw std::invalid_argument("plant time constant must be positive");
    // Negative process gains would need reverse-acting (negative) PID gains.
    if (!(plant.gain > 0.0)) throw std::invalid_argument("plant gain must be positive");

    const double kp = 1.2 * plant.time_constant / (plant.gain * plant.delay);
    const double ti = 2.0 * plant.delay;
    const double td = 0.5 * plant.delay;
    return {kp * td, kp, kp / ti};
}

GeneBounds bounds_from_baseline(const PidGains& base, double factor) {
    if (!(factor > 1.0)) throw std::invalid_argument("bounds factor must exceed 1");
    GeneBounds b;
    const auto genes = base.genes();
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(genes[i] >= 0.0) || !std::isfinite(genes[i]))
            throw std::invalid_argument("baseline gains must be finite and non-negative");
        b.gene[i] = {0.0, genes[i] > 0.0 ? factor * genes[i] : factor};
    }
    return b;
}

}  // namespace pidga
