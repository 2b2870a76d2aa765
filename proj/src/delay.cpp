#include "pidga/delay.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace pidga {

DelayApprox dfr_delay(double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("delay must be non-negative");
    if (tau == 0.0) return {0.0, TransferFunction{}};
    const double a2 = kDfrSecondOrder * tau * tau;
    const double a1 = kDfrFirstOrder * tau;
    return {tau, TransferFunction(Polynomial({a2, -a1, 1.0}), Polynomial({a2, a1, 1.0}))};
}

std::size_t delay_samples(double tau, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(tau >= 0.0)) throw std::invalid_argument("delay must be non-negative");
    const double ratio = tau / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9) {
        std::cerr << "warning: delay " << tau << " is not a multiple of dt " << dt
                  << "; rounding to " << rounded << " samples\n";
    }
    return static_cast<std::size_t>(rounded);
}

DelayLine::DelayLine(double tau, double dt) : buffer_(delay_samples(tau, dt), 0.0) {}

double DelayLine::push(double input) {
    if (buffer_.empty()) return input;
    const double out = buffer_[head_];
    buffer_[head_] = input;
    head_ = (head_ + 1) % buffer_.size();
    return out;
}

double DelayLine::peek() const {
    return buffer_.empty() ? 0.0 : buffer_[head_];
}

namespace {

bool blew_up(const Eigen::VectorXd& x, double y) {
    if (!std::isfinite(y) || std::abs(y) > kDivergenceLimit) return true;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || std::abs(x[i]) > kDivergenceLimit) return true;
    return false;
}

}  // namespace

StepResponse delayed_open_loop_step(const TransferFunction& inner, double tau, double dt,
                                    double horizon) {
    const std::size_t n = sample_count(dt, horizon);
    const StateSpace ss = to_state_space(inner);
    const Rk4Propagator prop(ss, dt);
    DelayLine line(tau, dt);

    std::vector<double> y(n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.order());
    bool diverged = false;
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = line.push(ss.C.dot(x) + ss.D);
        if (k + 1 == n) break;
        prop.step(x, 1.0);
        if (blew_up(x, y[k])) {
            diverged = true;
            std::fill(y.begin() + static_cast<std::ptrdiff_t>(k) + 1, y.end(), y[k]);
            break;
        }
    }
    return make_step_response(std::move(y), dt, horizon, diverged);
}

StepResponse delayed_closed_loop_step(const TransferFunction& forward, double tau, double dt,
                                      double horizon) {
    const std::size_t n = sample_count(dt, horizon);
    const StateSpace ss = to_state_space(forward);
    const Rk4Propagator prop(ss, dt);
    DelayLine line(tau, dt);

    std::vector<double> y(n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.order());
    bool diverged = false;
    for (std::size_t k = 0; k < n; ++k) {
        double out;
        if (line.length() == 0) {
            // Zero delay closes an algebraic loop through D: y = Cx + D(1 - y).
            out = (ss.C.dot(x) + ss.D) / (1.0 + ss.D);
        } else {
            out = line.peek();
        }
        const double err = 1.0 - out;
        const double w = ss.C.dot(x) + ss.D * err;
        if (line.length() != 0) line.push(w);
        y[k] = out;
        if (k + 1 == n) break;
        prop.step(x, err);
        if (blew_up(x, w)) {
            diverged = true;
            std::fill(y.begin() + static_cast<std::ptrdiff_t>(k) + 1, y.end(), y[k]);
            break;
        }
    }
    return make_step_response(std::move(y), dt, horizon, diverged);
}

}  // namespace pidga
