#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "pidga/delay.hpp"
#include "pidga/metrics.hpp"
#include "pidga/tuning.hpp"
#include "pidga/validation.hpp"

using namespace pidga;
using doctest::Approx;

namespace {

StepResponse from_error(const std::vector<double>& e, double dt) {
    std::vector<double> y(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) y[k] = 1.0 - e[k];
    return make_step_response(std::move(y), dt, dt * static_cast<double>(e.size() - 1), false);
}

StepResponse from_output(const std::vector<double>& y, double dt) {
    return make_step_response(y, dt, dt * static_cast<double>(y.size() - 1), false);
}

// Independent stability oracle: roots as eigenvalues of the companion matrix.
bool roots_in_open_lhp(const std::vector<double>& c) {
    const auto n = static_cast<Eigen::Index>(c.size() - 1);
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) comp(0, j) = -c[static_cast<std::size_t>(j) + 1] / c[0];
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    const Eigen::VectorXcd ev = comp.eigenvalues();
    return (ev.real().array() < 0.0).all();
}

}  // namespace

TEST_SUITE("indices") {
    TEST_CASE("zero error gives zero indices") {
        const auto ix = indices(from_error(std::vector<double>(101, 0.0), 0.01));
        CHECK(ix.mse == 0.0);
        CHECK(ix.iae == 0.0);
        CHECK(ix.ise == 0.0);
        CHECK(ix.itae == 0.0);
        CHECK(ix.itse == 0.0);
    }

    TEST_CASE("constant unit error on [0, 2]") {
        const auto ix = indices(from_error(std::vector<double>(201, 1.0), 0.01));
        CHECK(std::abs(ix.mse - 1.0) <= 0.02);
        CHECK(std::abs(ix.iae - 2.0) <= 0.02);
        CHECK(std::abs(ix.ise - 2.0) <= 0.02);
        CHECK(std::abs(ix.itae - 2.0) <= 0.02);
        CHECK(std::abs(ix.itse - 2.0) <= 0.02);
    }

    TEST_CASE("ramp error e(t) = t on [0, 1]") {
        const double dt = 1e-3;
        std::vector<double> e(1001);
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<double>(k) * dt;
        const auto ix = indices(from_error(e, dt));
        CHECK(std::abs(ix.iae - 0.5) <= 0.01);
        CHECK(std::abs(ix.ise - 1.0 / 3.0) <= 0.01);
        CHECK(std::abs(ix.itae - 1.0 / 3.0) <= 0.01);
        CHECK(std::abs(ix.itse - 0.25) <= 0.01);
        CHECK(std::abs(ix.mse - 1.0 / 3.0) <= 0.01);
    }

    TEST_CASE("properties on random error signals") {
        std::mt19937_64 gen(23);
        std::normal_distribution<double> noise(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> e(301);
            for (double& v : e) v = noise(gen);
            const double dt = 0.01;
            const auto r = from_error(e, dt);
            const auto ix = indices(r);
            const double n = static_cast<double>(e.size());
            // Cauchy-Schwarz on the grid: (sum |e| dt)^2 <= n dt * sum e^2 dt.
            CHECK(ix.iae * ix.iae <= n * dt * ix.ise * (1 + 1e-12));
            CHECK(ix.itae <= r.horizon * ix.iae);
            CHECK(ix.itse <= r.horizon * ix.ise);

            const double c = 1.0 + 3.0 * std::abs(noise(gen));
            std::vector<double> scaled = e;
            for (double& v : scaled) v *= c;
            const auto sx = indices(from_error(scaled, dt));
            CHECK(sx.iae == Approx(c * ix.iae).epsilon(1e-12));
            CHECK(sx.itae == Approx(c * ix.itae).epsilon(1e-12));
            CHECK(sx.ise == Approx(c * c * ix.ise).epsilon(1e-12));
            CHECK(sx.itse == Approx(c * c * ix.itse).epsilon(1e-12));
            CHECK(sx.mse == Approx(c * c * ix.mse).epsilon(1e-12));
        }
    }

    TEST_CASE("objective names") {
        CHECK(to_string(ObjectiveKind::Itae) == "ITAE");
        CHECK(parse_objective("itse") == ObjectiveKind::Itse);
        CHECK_FALSE(parse_objective("ITAEX").has_value());
        CHECK(kAllObjectives.size() == 5);
        const PerformanceIndices ix{1, 2, 3, 4, 5};
        CHECK(ix.get(ObjectiveKind::Mse) == 1);
        CHECK(ix.get(ObjectiveKind::Itae) == 2);
        CHECK(ix.get(ObjectiveKind::Iae) == 3);
        CHECK(ix.get(ObjectiveKind::Ise) == 4);
        CHECK(ix.get(ObjectiveKind::Itse) == 5);
    }
}

TEST_CASE("fitness") {
    CHECK(fitness(4.0) == 0.25);
    CHECK(fitness(0.0) == kFitnessCap);
    CHECK(fitness(1e-13) == kFitnessCap);
    CHECK(fitness(4.0, true) == kFitnessPenalty);
    CHECK(fitness(0.0, true) == kFitnessPenalty);
}

TEST_SUITE("standard measures") {
    TEST_CASE("synthetic overshoot trace") {
        const double dt = 0.01;
        std::vector<double> y(1501);
        for (std::size_t k = 0; k < y.size(); ++k) {
            const double t = static_cast<double>(k) * dt;
            // Piecewise-linear rise to 1.53 at t = 3.2, then back to 1 by t = 6.
            if (t <= 3.2)
                y[k] = 1.53 * t / 3.2;
            else if (t <= 6.0)
                y[k] = 1.53 - 0.53 * (t - 3.2) / 2.8;
            else
                y[k] = 1.0;
        }
        const auto m = standard_measures(from_output(y, dt));
        CHECK(m.percent_overshoot == Approx(53.0).epsilon(1e-9));
        CHECK(m.peak_time == Approx(3.2).epsilon(1e-12));
        CHECK(m.steady_state_error == 0.0);
        CHECK(m.rise_time_0_95 <= m.peak_time);
    }

    TEST_CASE("first-order response") {
        const auto r = step_response({Polynomial{1}, Polynomial{1, 1}}, 0.01, 15.0);
        const auto m = standard_measures(r);
        CHECK(m.percent_overshoot == 0.0);
        CHECK(std::abs(m.rise_time_0_95 - std::log(20.0)) <= 0.01);
        CHECK(std::abs(m.settling_time_5pct - std::log(20.0)) <= 0.01);
        CHECK(m.peak_time == Approx(15.0));
        CHECK(m.settling_time_5pct <= r.horizon);
    }

    TEST_CASE("constant output") {
        const auto m = standard_measures(from_output(std::vector<double>(100, 1.0), 0.01));
        CHECK(m.percent_overshoot == 0.0);
        CHECK(m.rise_time_0_95 == 0.0);
        CHECK(m.settling_time_5pct == 0.0);
        CHECK(m.steady_state_error == 0.0);
    }

    TEST_CASE("non-positive final value is rejected") {
        CHECK_THROWS_AS(standard_measures(from_output({0.0, 0.5, 0.0}, 0.1)), std::domain_error);
        CHECK_THROWS_AS(standard_measures(from_output({0.0, -0.5, -1.0}, 0.1)), std::domain_error);
    }
}

TEST_SUITE("routh") {
    TEST_CASE("examples") {
        CHECK(routh_stable({1, 1, 1}));
        CHECK_FALSE(routh_stable({1, 1, 1, 1}));
        CHECK_FALSE(routh_stable({1, 3, 2, 6}));
        CHECK(routh_stable({-1, -1, -1}));
        CHECK_FALSE(routh_stable({1, -1}));
        CHECK_FALSE(routh_stable({1, 0}));
        CHECK_THROWS_AS(routh_stable(Polynomial{}), std::invalid_argument);
    }

    TEST_CASE("agrees with companion-matrix eigenvalues") {
        std::mt19937_64 gen(29);
        std::uniform_real_distribution<double> u(-1.0, 4.0);
        std::uniform_int_distribution<int> deg(1, 5);
        int stable = 0;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> c{1.0 + std::abs(u(gen))};
            const int n = deg(gen);
            for (int i = 0; i < n; ++i) c.push_back(u(gen));
            const bool expect = roots_in_open_lhp(c);
            stable += expect ? 1 : 0;
            CHECK_MESSAGE(routh_stable(Polynomial(c)) == expect, Polynomial(c).to_string());
        }
        // The generator must exercise both outcomes.
        CHECK(stable > 20);
        CHECK(stable < 180);
    }
}

TEST_SUITE("stability margin") {
    TEST_CASE("textbook ultimate gain") {
        const TransferFunction c{Polynomial{1}, Polynomial{1, 3, 2, 0}};
        const double m = stability_margin(c, TransferFunction{}, TransferFunction{});
        CHECK(std::abs(m - 6.0) <= 1e-3);
    }

    TEST_CASE("first-order loop never destabilizes") {
        const TransferFunction p{Polynomial{1}, Polynomial{1}};
        const TransferFunction g{Polynomial{1}, Polynomial{1, 1}};
        CHECK(stability_margin(p, g, TransferFunction{}) == std::numeric_limits<double>::infinity());
        // Built as s/s without cancellation, the P controller leaves a root at
        // the origin, which the strict test treats as marginal.
        CHECK_THROWS_AS(stability_margin(pid_tf({0, 1, 0}), g, TransferFunction{}), std::domain_error);
    }

    TEST_CASE("unstable nominal loop is an error") {
        const TransferFunction c{Polynomial{10}, Polynomial{1, 3, 2, 0}};
        CHECK_THROWS_AS(stability_margin(c, TransferFunction{}, TransferFunction{}), std::domain_error);
    }

    TEST_CASE("margin shrinks as the modelled delay grows for fixed gains") {
        const PidGains g{0.6, 1.2, 0.6};
        double previous = std::numeric_limits<double>::infinity();
        for (double tau : {0.01, 0.025, 0.05, 0.075, 0.1, 0.25, 0.5, 0.75, 1.0}) {
            const double m = pid_stability_margin(g, {1.0, 1.0, tau});
            CHECK(m < previous);
            previous = m;
        }
    }

    TEST_CASE("Z-N margin at tau = 1 brackets sustained oscillation of the exact delay loop") {
        // Dual-oracle fixture, measured once: DFR margin 1.5712; the exact
        // delay-line loop decays at 0.9 Kc (swing ratio 0.071) and grows at
        // 1.1 Kc (swing ratio 7.98).
        const PlantFolpd plant{1.0, 1.0, 1.0};
        const PidGains zn = ziegler_nichols(plant);
        const double m = pid_stability_margin(zn, plant);
        CHECK(std::isfinite(m));
        CHECK(m == Approx(1.5712).epsilon(1e-3));
        auto ratio = [&](double f) {
            const PidGains g{zn.kd * m * f, zn.kp * m * f, zn.ki * m * f};
            const auto r = simulate_pid_loop_exact(g, plant, 0.01, 60.0);
            REQUIRE_FALSE(r.diverged);
            return swing(r, 40.0, 60.0) / swing(r, 20.0, 40.0);
        };
        CHECK(ratio(0.9) < 1.0);
        CHECK(ratio(1.1) > 1.0);
        // The DFR loop itself oscillates with constant amplitude at the margin.
        const PidGains at{zn.kd * m, zn.kp * m, zn.ki * m};
        const auto r = simulate_pid_loop(at, plant, 0.01, 60.0);
        CHECK(swing(r, 40.0, 60.0) / swing(r, 20.0, 40.0) == Approx(1.0).epsilon(0.01));
    }
}
