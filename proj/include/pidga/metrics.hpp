#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string_view>

#include "pidga/lti.hpp"

namespace pidga {

enum class ObjectiveKind { Mse, Itae, Iae, Ise, Itse };

inline constexpr std::array<ObjectiveKind, 5> kAllObjectives = {
    ObjectiveKind::Mse, ObjectiveKind::Iae, ObjectiveKind::Ise, ObjectiveKind::Itae,
    ObjectiveKind::Itse};

std::string_view to_string(ObjectiveKind kind);
/// Position in kAllObjectives.
std::size_t objective_index(ObjectiveKind kind);
/// Case-insensitive; returns nullopt for unknown names.
std::optional<ObjectiveKind> parse_objective(std::string_view name);

/// Error-integral criteria of a sampled step response, approximated by
/// dt-weighted Riemann sums over the whole horizon.
struct PerformanceIndices {
    double mse = 0.0;
    double itae = 0.0;
    double iae = 0.0;
    double ise = 0.0;
    double itse = 0.0;

    [[nodiscard]] double get(ObjectiveKind kind) const;
};

PerformanceIndices indices(const StepResponse& resp);

inline constexpr double kFitnessCap = 1e12;
inline constexpr double kFitnessPenalty = 1e-12;

/// Reciprocal of a performance index, capped at kFitnessCap near zero.
double fitness(double index_value);
/// As above, but diverged responses always get kFitnessPenalty.
double fitness(double index_value, bool diverged);

struct StandardMeasures {
    double percent_overshoot = 0.0;
    double settling_time_5pct = 0.0;
    double rise_time_0_95 = 0.0;
    double peak_time = 0.0;
    double steady_state_error = 0.0;
    /// Loop-gain multiplier at the stability boundary; +inf when none was found.
    double stability_margin = std::numeric_limits<double>::infinity();
};

/// Time-domain measures relative to the final sample.  stability_margin is
/// left at its default; fill it from stability_margin().  Throws
/// std::domain_error when the final value is not positive.
StandardMeasures standard_measures(const StepResponse& resp);

/// Strict Routh-Hurwitz test: every first-column entry must be positive.  A
/// (numerically) zero pivot counts as not stable.
bool routh_stable(const Polynomial& p);

inline constexpr double kMarginSearchLimit = 1e6;

/// Smallest loop-gain multiplier K > 1 at which den(L) + K num(L) stops being
/// Routh stable, via doubling then bisection to relative width 1e-4.  Returns
/// +inf when the loop is still stable at K = 1e6.  Throws std::domain_error
/// when the nominal loop is already unstable.
double stability_margin(const TransferFunction& controller, const TransferFunction& plant,
                        const TransferFunction& delay);

}  // namespace pidga
