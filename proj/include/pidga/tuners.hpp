#pragma once

#include "pidga/gains.hpp"
#include "pidga/lti.hpp"

namespace pidga {

/// First-order lag plus dead time: K exp(-L s) / (T s + 1).
struct PlantFolpd {
    double gain = 1.0;
    double time_constant = 1.0;
    double delay = 0.0;

    /// Rational part K / (T s + 1); the delay is modelled separately.
    [[nodiscard]] TransferFunction lag_tf() const;
};

/// Open-loop (process reaction curve) Ziegler-Nichols PID rule:
///   kp = 1.2 T / (K L),  Ti = 2 L,  Td = 0.5 L,  ki = kp / Ti,  kd = kp Td.
/// Throws std::invalid_argument for L <= 0, T <= 0 or K <= 0.
PidGains ziegler_nichols(const PlantFolpd& plant);

inline constexpr double kDefaultBoundsFactor = 2.0;

/// Box [0, factor * gene] around a baseline; zero genes fall back to [0, factor].
GeneBounds bounds_from_baseline(const PidGains& base, double factor = kDefaultBoundsFactor);

}  // namespace pidga
