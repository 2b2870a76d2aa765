#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pidga/gains.hpp"

namespace pidga {

/// Real polynomial in the Laplace variable s, coefficients in descending powers:
/// coeffs[0]*s^n + ... + coeffs[n].  Leading zeros are trimmed on construction;
/// the zero polynomial is stored as the single coefficient 0.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c) { return Polynomial({c}); }

    [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
    [[nodiscard]] std::size_t degree() const { return coeffs_.size() - 1; }
    [[nodiscard]] double leading() const { return coeffs_.front(); }
    [[nodiscard]] bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

    [[nodiscard]] double operator()(double s) const;
    [[nodiscard]] std::complex<double> operator()(std::complex<double> s) const;

    [[nodiscard]] Polynomial scaled(double k) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<double> coeffs_;
};

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }
inline Polynomial operator+(const Polynomial& a, const Polynomial& b) { return poly_add(a, b); }

/// Rational SISO transfer function num(s)/den(s).  No pole-zero cancellation is
/// ever performed, so a P-only controller built as s/s keeps both factors.
class TransferFunction {
public:
    TransferFunction() : num_{1.0}, den_{1.0} {}
    TransferFunction(Polynomial num, Polynomial den);

    [[nodiscard]] const Polynomial& num() const { return num_; }
    [[nodiscard]] const Polynomial& den() const { return den_; }

    [[nodiscard]] bool is_proper() const { return num_.degree() <= den_.degree(); }

    [[nodiscard]] std::complex<double> operator()(std::complex<double> s) const;
    /// Value at s = 0.  Poles at the origin produce +/-inf.
    [[nodiscard]] double dc_gain() const;

    [[nodiscard]] std::string to_string() const;

private:
    Polynomial num_;
    Polynomial den_;
};

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b);

/// (kd*s^2 + kp*s + ki) / s.  Throws std::invalid_argument when all gains are zero.
TransferFunction pid_tf(const PidGains& g);

/// Unity-feedback closed loop of controller * plant * delay:
/// T = num(L) / (num(L) + den(L)).  Throws std::domain_error if T is improper.
TransferFunction closed_loop(const TransferFunction& controller, const TransferFunction& plant,
                             const TransferFunction& delay);

/// Open-loop product controller * plant * delay.
TransferFunction loop_tf(const TransferFunction& controller, const TransferFunction& plant,
                         const TransferFunction& delay);

/// Single-input single-output continuous-time realization
/// x' = A x + B u,  y = C x + D u.
struct StateSpace {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    double D = 0.0;

    [[nodiscard]] Eigen::Index order() const { return A.rows(); }
    [[nodiscard]] std::complex<double> frequency_response(double omega) const;
};

/// Controllable-canonical realization.  Throws std::domain_error for improper input.
StateSpace to_state_space(const TransferFunction& tf);

/// Exact one-step map of classical RK4 applied to x' = A x + B u with u held
/// constant over the step:  x_{k+1} = Phi x_k + Gamma u.
struct Rk4Propagator {
    Eigen::MatrixXd phi;
    Eigen::VectorXd gamma;

    Rk4Propagator(const StateSpace& ss, double dt);

    void step(Eigen::VectorXd& x, double u) const { x = phi * x + gamma * u; }
};

/// One classical RK4 step evaluated stage by stage.
Eigen::VectorXd rk4_step(const StateSpace& ss, const Eigen::VectorXd& x, double u, double dt);

/// States with any |x_i| above this magnitude mark a simulation as diverged.
inline constexpr double kDivergenceLimit = 1e9;

/// Number of samples on [0, horizon] at spacing dt (both endpoints included).
std::size_t sample_count(double dt, double horizon);

/// Uniformly sampled unit-step response; e[k] = 1 - y[k].
struct StepResponse {
    double dt = 0.0;
    double horizon = 0.0;
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> e;
    /// Integration stopped early because the state blew up; the remaining
    /// samples repeat the last computed output.
    bool diverged = false;

    [[nodiscard]] std::size_t size() const { return y.size(); }
};

/// Builds t and e from a filled output trace.
StepResponse make_step_response(std::vector<double> y, double dt, double horizon, bool diverged);

/// Fixed-step RK4 unit-step response from zero initial state.
StepResponse step_response(const TransferFunction& tf, double dt, double horizon);

}  // namespace pidga
