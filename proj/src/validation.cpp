#include "pidga/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pidga/delay.hpp"
#include "pidga/metrics.hpp"
#include "pidga/tuning.hpp"

namespace pidga {

double linf_distance(const StepResponse& a, const StepResponse& b) {
    double d = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(a.y[k] - b.y[k]));
    return d;
}

double swing(const StepResponse& r, double from, double to) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (r.t[k] < from || r.t[k] >= to) continue;
        lo = std::min(lo, r.y[k]);
        hi = std::max(hi, r.y[k]);
    }
    return hi >= lo ? hi - lo : 0.0;
}

AllPassReport dfr_all_pass_check(double tau, double w_lo, double w_hi, std::size_t points) {
    const TransferFunction h = dfr_delay(tau).tf;
    AllPassReport rep;
    const double step = std::log10(w_hi / w_lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double w = w_lo * std::pow(10.0, step * static_cast<double>(i));
        const std::complex<double> v = h({0.0, w});
        rep.max_magnitude_error = std::max(rep.max_magnitude_error, std::abs(std::abs(v) - 1.0));
        if (w * tau <= 1.0) {
            // Unwrapped reference phase lies in [-1, 0] here, so the principal value matches.
            rep.max_phase_error = std::max(rep.max_phase_error, std::abs(std::arg(v) + w * tau));
        }
    }
    return rep;
}

std::vector<CheckResult> run_validation(const PlantFolpd& plant, double dt, double horizon) {
    std::vector<CheckResult> out;
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(6);
        os << v;
        return os.str();
    };

    for (double tau : {0.01, 0.1, 1.0}) {
        const AllPassReport r = dfr_all_pass_check(tau);
        out.push_back({"DFR all-pass tau=" + fmt(tau),
                       r.max_magnitude_error <= 1e-12 && r.max_phase_error <= 0.01,
                       "max |H|-1 = " + fmt(r.max_magnitude_error) +
                           ", max phase error = " + fmt(r.max_phase_error) + " rad"});
    }

    {
        const TransferFunction g{Polynomial({1.0}), Polynomial({1.0, 3.0, 2.0, 0.0})};
        const double m = stability_margin(TransferFunction{}, g, TransferFunction{});
        out.push_back({"Routh ultimate gain of 1/(s(s+1)(s+2))", std::abs(m - 6.0) <= 1e-3,
                       "margin = " + fmt(m)});
    }

    {
        PlantFolpd p = plant;
        p.delay = 0.1;
        const PidGains zn = ziegler_nichols(p);
        const double d = linf_distance(simulate_pid_loop(zn, p, dt, horizon),
                                       simulate_pid_loop_exact(zn, p, dt, horizon));
        out.push_back({"DFR vs delay line, Z-N gains, tau=0.1", d <= 0.05,
                       "L-inf = " + fmt(d) + " (limit 0.05)"});
    }

    {
        PlantFolpd p = plant;
        p.delay = 1.0;
        const PidGains zn = ziegler_nichols(p);
        const double m = pid_stability_margin(zn, p);
        auto growth = [&](double factor) {
            const PidGains g{zn.kd * m * factor, zn.kp * m * factor, zn.ki * m * factor};
            const StepResponse r = simulate_pid_loop_exact(g, p, dt, 60.0);
            if (r.diverged) return std::numeric_limits<double>::infinity();
            return swing(r, 40.0, 60.0) / swing(r, 20.0, 40.0);
        };
        const double below = growth(0.9);
        const double above = growth(1.1);
        out.push_back({"margin vs delay-line oscillation, tau=1", below < 1.0 && above > 1.0,
                       "DFR margin = " + fmt(m) + ", exact-delay swing ratio at 0.9x = " +
                           fmt(below) + ", at 1.1x = " + fmt(above)});
    }
    return out;
}

}  // namespace pidga
