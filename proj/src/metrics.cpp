#include "pidga/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pidga {

std::string_view to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::Mse: return "MSE";
        case ObjectiveKind::Itae: return "ITAE";
        case ObjectiveKind::Iae: return "IAE";
        case ObjectiveKind::Ise: return "ISE";
        case ObjectiveKind::Itse: return "ITSE";
    }
    return "?";
}

std::size_t objective_index(ObjectiveKind kind) {
    return static_cast<std::size_t>(
        std::find(kAllObjectives.begin(), kAllObjectives.end(), kind) - kAllObjectives.begin());
}

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (ObjectiveKind k : kAllObjectives)
        if (to_string(k) == upper) return k;
    return std::nullopt;
}

double PerformanceIndices::get(ObjectiveKind kind) const {
    switch (kind) {
        case ObjectiveKind::Mse: return mse;
        case ObjectiveKind::Itae: return itae;
        case ObjectiveKind::Iae: return iae;
        case ObjectiveKind::Ise: return ise;
        case ObjectiveKind::Itse: return itse;
    }
    return 0.0;
}

PerformanceIndices indices(const StepResponse& resp) {
    PerformanceIndices out;
    const double dt = resp.dt;
    for (std::size_t k = 0; k < resp.e.size(); ++k) {
        const double e = resp.e[k];
        const double ae = std::abs(e);
        const double se = e * e;
        const double t = resp.t[k];
        out.iae += ae * dt;
        out.ise += se * dt;
        out.itae += t * ae * dt;
        out.itse += t * se * dt;
    }
    out.mse = out.ise / resp.horizon;
    return out;
}

double fitness(double index_value) {
    if (std::isnan(index_value)) return kFitnessPenalty;
    if (index_value < 1.0 / kFitnessCap) return kFitnessCap;
    return 1.0 / index_value;
}

double fitness(double index_value, bool diverged) {
    return diverged ? kFitnessPenalty : fitness(index_value);
}

StandardMeasures standard_measures(const StepResponse& resp) {
    if (resp.y.empty()) throw std::invalid_argument("empty step response");
    const auto& y = resp.y;
    const double final_value = y.back();
    if (!(final_value > 0.0))
        throw std::domain_error("standard measures undefined for non-positive final value");

    StandardMeasures m;
    const auto peak = std::max_element(y.begin(), y.end());
    const auto peak_idx = static_cast<std::size_t>(peak - y.begin());
    m.percent_overshoot = std::max(0.0, (*peak - final_value) / final_value * 100.0);
    m.peak_time = resp.t[peak_idx];

    const double band = 0.05 * final_value;
    std::size_t settle_idx = y.size() - 1;
    while (settle_idx > 0 && std::abs(y[settle_idx - 1] - final_value) <= band) --settle_idx;
    m.settling_time_5pct = resp.t[settle_idx];

    const double rise_level = 0.95 * final_value;
    const auto rise = std::find_if(y.begin(), y.end(), [&](double v) { return v >= rise_level; });
    m.rise_time_0_95 = resp.t[static_cast<std::size_t>(rise - y.begin())];

    m.steady_state_error = 1.0 - final_value;
    return m;
}

bool routh_stable(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("Routh test of the zero polynomial");
    std::vector<double> c = p.coeffs();
    if (c.front() < 0.0)
        for (double& v : c) v = -v;
    const std::size_t n = c.size() - 1;
    if (n == 0) return true;
    // Positive coefficients are necessary; this also rejects roots at the origin.
    for (double v : c)
        if (!(v > 0.0)) return false;

    const std::size_t width = n / 2 + 1;
    std::vector<double> upper(width, 0.0), lower(width, 0.0);
    for (std::size_t i = 0; i <= n; ++i) (i % 2 == 0 ? upper : lower)[i / 2] = c[i];

    auto row_scale = [](const std::vector<double>& r) {
        double s = 0.0;
        for (double v : r) s = std::max(s, std::abs(v));
        return s;
    };

    for (std::size_t row = 1; row <= n; ++row) {
        const double scale = std::max(row_scale(upper), row_scale(lower));
        const double pivot = lower[0];
        if (!(pivot > 1e-12 * scale)) return false;
        std::vector<double> next(width, 0.0);
        for (std::size_t j = 0; j + 1 < width; ++j)
            next[j] = (pivot * upper[j + 1] - upper[0] * lower[j + 1]) / pivot;
        upper = std::move(lower);
        lower = std::move(next);
    }
    return true;
}

double stability_margin(const TransferFunction& controller, const TransferFunction& plant,
                        const TransferFunction& delay) {
    const TransferFunction l = loop_tf(controller, plant, delay);
    auto stable_at = [&](double gain) { return routh_stable(l.den() + l.num().scaled(gain)); };

    if (!stable_at(1.0)) throw std::domain_error("nominal closed loop is not stable");

    double lo = 1.0;
    double hi = 2.0;
    while (stable_at(hi)) {
        if (hi >= kMarginSearchLimit) return std::numeric_limits<double>::infinity();
        lo = hi;
        hi = std::min(2.0 * hi, kMarginSearchLimit);
    }
    while ((hi - lo) > 1e-4 * lo) {
        const double mid = 0.5 * (lo + hi);
        (stable_at(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace pidga
