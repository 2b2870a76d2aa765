#pragma once

#include <cstddef>
#include <vector>

#include "pidga/lti.hpp"

namespace pidga {

/// Second-order all-pass rational model of exp(-s*tau):
///   (1 - 0.49 s tau + 0.0954 s^2 tau^2) / (1 + 0.49 s tau + 0.0954 s^2 tau^2)
struct DelayApprox {
    double tau = 0.0;
    TransferFunction tf;
};

inline constexpr double kDfrFirstOrder = 0.49;
inline constexpr double kDfrSecondOrder = 0.0954;

/// Throws std::invalid_argument for negative tau.  tau == 0 gives 1/1.
DelayApprox dfr_delay(double tau);

/// Exact sample-shift delay of round(tau/dt) steps.  Output is zero until the
/// buffer has filled.  Single owner; not for concurrent use.
class DelayLine {
public:
    DelayLine(double tau, double dt);

    [[nodiscard]] std::size_t length() const { return buffer_.size(); }

    /// Pushes the current input and returns the input from length() steps ago.
    double push(double input);

    /// Value that the next push() will return, without advancing.
    [[nodiscard]] double peek() const;

private:
    std::vector<double> buffer_;
    std::size_t head_ = 0;
};

/// Number of whole samples represented by tau at spacing dt (nearest rounding).
std::size_t delay_samples(double tau, double dt);

/// Unit step through `inner` followed by an exact delay of tau.
StepResponse delayed_open_loop_step(const TransferFunction& inner, double tau, double dt,
                                    double horizon);

/// Unity-feedback loop whose forward path is `forward` (controller * plant,
/// biproper or strictly proper) followed by an exact delay of tau.  The
/// forward path is integrated with RK4 while its input is held across each
/// step.  Because every block is LTI and SISO, placing the delay after the
/// plant gives the same output as placing it on the plant input.
StepResponse delayed_closed_loop_step(const TransferFunction& forward, double tau, double dt,
                                      double horizon);

}  // namespace pidga
