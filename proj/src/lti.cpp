#include "pidga/lti.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pidga {

namespace {

void trim_leading_zeros(std::vector<double>& c) {
    auto first = std::find_if(c.begin(), c.end(), [](double v) { return v != 0.0; });
    if (first == c.end()) {
        c.assign(1, 0.0);
        return;
    }
    c.erase(c.begin(), first);
}

bool diverged_state(const Eigen::VectorXd& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || std::abs(x[i]) > kDivergenceLimit) return true;
    }
    return false;
}

}  // namespace

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : Polynomial(std::vector<double>(coeffs)) {}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    trim_leading_zeros(coeffs_);
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (double c : coeffs_) acc = acc * s + c;
    return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
    std::complex<double> acc = 0.0;
    for (double c : coeffs_) acc = acc * s + c;
    return acc;
}

Polynomial Polynomial::scaled(double k) const {
    std::vector<double> c = coeffs_;
    for (double& v : c) v *= k;
    return Polynomial(std::move(c));
}

std::string Polynomial::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ", ";
        os << coeffs_[i];
    }
    os << ']';
    return os.str();
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<double> out(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    return Polynomial(std::move(out));
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    const std::size_t n = std::max(x.size(), y.size());
    std::vector<double> out(n, 0.0);
    std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(n - x.size()));
    for (std::size_t j = 0; j < y.size(); ++j) out[n - y.size() + j] += y[j];
    return Polynomial(std::move(out));
}

TransferFunction::TransferFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("transfer function denominator is zero");
}

std::complex<double> TransferFunction::operator()(std::complex<double> s) const {
    return num_(s) / den_(s);
}

double TransferFunction::dc_gain() const {
    const double n = num_(0.0);
    const double d = den_(0.0);
    if (d == 0.0) {
        if (n == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return n > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
    }
    return n / d;
}

std::string TransferFunction::to_string() const {
    return num_.to_string() + " / " + den_.to_string();
}

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
    return {a.num() * b.num(), a.den() * b.den()};
}

TransferFunction pid_tf(const PidGains& g) {
    if (g.kd == 0.0 && g.kp == 0.0 && g.ki == 0.0)
        throw std::invalid_argument("degenerate PID controller: all gains are zero");
    return {Polynomial({g.kd, g.kp, g.ki}), Polynomial({1.0, 0.0})};
}

TransferFunction loop_tf(const TransferFunction& controller, const TransferFunction& plant,
                         const TransferFunction& delay) {
    return controller * plant * delay;
}

TransferFunction closed_loop(const TransferFunction& controller, const TransferFunction& plant,
                             const TransferFunction& delay) {
    const TransferFunction l = loop_tf(controller, plant, delay);
    TransferFunction t(l.num(), l.num() + l.den());
    if (!t.is_proper())
        throw std::domain_error("closed loop is improper: " + t.to_string());
    return t;
}

std::complex<double> StateSpace::frequency_response(double omega) const {
    const Eigen::Index n = order();
    if (n == 0) return D;
    using Cmat = Eigen::MatrixXcd;
    Cmat m = -A.cast<std::complex<double>>();
    m.diagonal().array() += std::complex<double>(0.0, omega);
    const Eigen::VectorXcd x = m.partialPivLu().solve(B.cast<std::complex<double>>());
    return (C.cast<std::complex<double>>() * x)(0) + D;
}

StateSpace to_state_space(const TransferFunction& tf) {
    if (!tf.is_proper())
        throw std::domain_error("cannot realize improper transfer function " + tf.to_string());
    const auto& den = tf.den().coeffs();
    const std::size_t n = den.size() - 1;
    const double lead = den.front();

    // Monic denominator s^n + a1 s^{n-1} + ... + an, numerator padded to n+1 terms.
    std::vector<double> a(n + 1), b(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) a[i] = den[i] / lead;
    const auto& num = tf.num().coeffs();
    for (std::size_t i = 0; i < num.size(); ++i) b[n + 1 - num.size() + i] = num[i] / lead;
    if (tf.num().is_zero()) std::fill(b.begin(), b.end(), 0.0);

    StateSpace ss;
    ss.D = b[0];
    const auto ni = static_cast<Eigen::Index>(n);
    ss.A = Eigen::MatrixXd::Zero(ni, ni);
    ss.B = Eigen::VectorXd::Zero(ni);
    ss.C = Eigen::RowVectorXd::Zero(ni);
    if (n == 0) return ss;
    for (Eigen::Index j = 0; j < ni; ++j) {
        ss.A(0, j) = -a[static_cast<std::size_t>(j) + 1];
        ss.C(j) = b[static_cast<std::size_t>(j) + 1] - b[0] * a[static_cast<std::size_t>(j) + 1];
    }
    for (Eigen::Index i = 1; i < ni; ++i) ss.A(i, i - 1) = 1.0;
    ss.B(0) = 1.0;
    return ss;
}

Rk4Propagator::Rk4Propagator(const StateSpace& ss, double dt) {
    const Eigen::Index n = ss.order();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd ha = dt * ss.A;
    const Eigen::MatrixXd ha2 = ha * ha;
    const Eigen::MatrixXd ha3 = ha2 * ha;
    phi = id + ha + ha2 / 2.0 + ha3 / 6.0 + ha3 * ha / 24.0;
    gamma = dt * (id + ha / 2.0 + ha2 / 6.0 + ha3 / 24.0) * ss.B;
}

Eigen::VectorXd rk4_step(const StateSpace& ss, const Eigen::VectorXd& x, double u, double dt) {
    auto f = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd { return ss.A * z + ss.B * u; };
    const Eigen::VectorXd k1 = f(x);
    const Eigen::VectorXd k2 = f(x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = f(x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = f(x + dt * k3);
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::size_t sample_count(double dt, double horizon) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(horizon >= dt)) throw std::invalid_argument("horizon must be at least dt");
    // The small slack absorbs representation error in ratios such as 15/0.01.
    return static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
}

StepResponse make_step_response(std::vector<double> y, double dt, double horizon, bool diverged) {
    StepResponse r;
    r.dt = dt;
    r.horizon = horizon;
    r.diverged = diverged;
    r.t.resize(y.size());
    r.e.resize(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        r.t[k] = static_cast<double>(k) * dt;
        r.e[k] = 1.0 - y[k];
    }
    r.y = std::move(y);
    return r;
}

StepResponse step_response(const TransferFunction& tf, double dt, double horizon) {
    const std::size_t n = sample_count(dt, horizon);
    const StateSpace ss = to_state_space(tf);
    const Rk4Propagator prop(ss, dt);

    std::vector<double> y(n);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.order());
    bool diverged = false;
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = ss.C.dot(x) + ss.D;
        if (k + 1 == n) break;
        prop.step(x, 1.0);
        if (diverged_state(x)) {
            diverged = true;
            std::fill(y.begin() + static_cast<std::ptrdiff_t>(k) + 1, y.end(), y[k]);
            break;
        }
    }
    return make_step_response(std::move(y), dt, horizon, diverged);
}

}  // namespace pidga
