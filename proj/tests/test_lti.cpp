#include <doctest.h>

#include <cmath>
#include <random>

#include "pidga/lti.hpp"

using namespace pidga;
using doctest::Approx;

TEST_SUITE("polynomial") {
    TEST_CASE("multiplication") {
        CHECK(poly_mul({1, 1}, {1, 2}) == Polynomial({1, 3, 2}));
        const Polynomial p{2, -1, 4};
        CHECK(poly_mul(p, Polynomial::constant(1.0)) == p);
        CHECK(poly_mul(p, Polynomial{}).is_zero());
        CHECK(poly_mul({1, 0, 1}, {3, 2}).degree() == 3);
    }

    TEST_CASE("addition trims leading zeros") {
        CHECK(poly_add({1, 0, 1}, {1, 0}) == Polynomial({1, 1, 1}));
        const Polynomial p{5, 4};
        CHECK(poly_add(p, Polynomial{}) == p);
        const Polynomial z = poly_add({1, 1}, {-1, -1});
        CHECK(z.is_zero());
        CHECK(z.coeffs().size() == 1);
        CHECK(poly_add({1, 2, 3}, {-1, 0, 0}) == Polynomial({2, 3}));
    }

    TEST_CASE("construction normalizes") {
        CHECK(Polynomial({0, 0, 3, 1}).degree() == 1);
        CHECK(Polynomial(std::vector<double>{}).is_zero());
        CHECK(Polynomial({0.0}).degree() == 0);
    }

    TEST_CASE("evaluation") {
        const Polynomial p{1, 3, 2};
        CHECK(p(2.0) == 12.0);
        CHECK(p(std::complex<double>(0, 1)) == std::complex<double>(1, 3));
    }
}

TEST_SUITE("transfer function") {
    TEST_CASE("zero denominator is rejected") {
        CHECK_THROWS_AS(TransferFunction(Polynomial{1}, Polynomial{}), std::invalid_argument);
    }

    TEST_CASE("pid_tf") {
        const auto p = pid_tf({0, 1, 0});
        CHECK(p.num() == Polynomial({1, 0}));
        CHECK(p.den() == Polynomial({1, 0}));
        const auto zn = pid_tf({0.6, 12, 60});
        CHECK(zn.num() == Polynomial({0.6, 12, 60}));
        CHECK(zn.den() == Polynomial({1, 0}));
        const auto d = pid_tf({1, 0, 0});
        CHECK(d.num() == Polynomial({1, 0, 0}));
        CHECK_THROWS_AS(pid_tf({0, 0, 0}), std::invalid_argument);
    }

    TEST_CASE("closed loop algebra") {
        const TransferFunction g{Polynomial{1}, Polynomial{1, 1}};
        const TransferFunction one;
        const auto t1 = closed_loop(one, g, one);
        CHECK(t1.num() == Polynomial({1}));
        CHECK(t1.den() == Polynomial({1, 2}));

        const TransferFunction c{Polynomial{1, 1, 1}, Polynomial{1, 0}};
        const auto t2 = closed_loop(c, g, one);
        CHECK(t2.num() == Polynomial({1, 1, 1}));
        CHECK(t2.den() == Polynomial({2, 2, 1}));
    }

    TEST_CASE("closed loop rejects improper results") {
        // L = -s/(s+1): the leading terms cancel in 1 + L, leaving T = -s / 1.
        const TransferFunction lead{Polynomial{-1, 0}, Polynomial{1, 1}};
        CHECK_THROWS_AS(closed_loop(TransferFunction{}, lead, TransferFunction{}), std::domain_error);
        // L = -s^2: T = -s^2 / (1 - s^2) is proper even though L is not.
        const TransferFunction c{Polynomial{1, 0, 0}, Polynomial{1}};
        const TransferFunction neg{Polynomial{-1}, Polynomial{1}};
        CHECK_NOTHROW(closed_loop(c, neg, TransferFunction{}));
    }

    TEST_CASE("closed-loop DC gain is exactly one with integral action") {
        std::mt19937_64 gen(7);
        std::uniform_real_distribution<double> u(0.01, 10.0);
        for (int i = 0; i < 50; ++i) {
            const PidGains g{u(gen), u(gen), u(gen)};
            const TransferFunction plant{Polynomial{u(gen)}, Polynomial{u(gen), 1}};
            const TransferFunction delay{Polynomial{0.1, -0.3, 1}, Polynomial{0.1, 0.3, 1}};
            const auto t = closed_loop(pid_tf(g), plant, delay);
            CHECK(t.dc_gain() == 1.0);
        }
    }
}

TEST_SUITE("state space") {
    TEST_CASE("first order") {
        const auto ss = to_state_space({Polynomial{1}, Polynomial{1, 1}});
        REQUIRE(ss.order() == 1);
        CHECK(ss.A(0, 0) == -1.0);
        CHECK(ss.B(0) == 1.0);
        CHECK(ss.C(0) == 1.0);
        CHECK(ss.D == 0.0);
    }

    TEST_CASE("biproper has feedthrough") {
        const auto ss = to_state_space({Polynomial{1, 2}, Polynomial{1, 1}});
        CHECK(ss.D == 1.0);
        CHECK(ss.A(0, 0) == -1.0);
        CHECK(ss.C(0) == 1.0);
    }

    TEST_CASE("second order canonical form") {
        const auto ss = to_state_space({Polynomial{1}, Polynomial{1, 3, 2}});
        REQUIRE(ss.order() == 2);
        CHECK(ss.A(0, 0) == -3.0);
        CHECK(ss.A(0, 1) == -2.0);
        CHECK(ss.A(1, 0) == 1.0);
        CHECK(ss.A(1, 1) == 0.0);
        CHECK(ss.C(0) == 0.0);
        CHECK(ss.C(1) == 1.0);
        CHECK(ss.D == 0.0);
    }

    TEST_CASE("static gain has no states") {
        const auto ss = to_state_space({Polynomial{3}, Polynomial{2}});
        CHECK(ss.order() == 0);
        CHECK(ss.D == 1.5);
    }

    TEST_CASE("improper input is rejected") {
        CHECK_THROWS_AS(to_state_space({Polynomial{1, 0, 0}, Polynomial{1, 0}}), std::domain_error);
    }

    TEST_CASE("realization matches rational evaluation") {
        std::mt19937_64 gen(11);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> den{u(gen) + 3.0}, num;
            const int n = 1 + trial % 5;
            for (int i = 0; i < n; ++i) den.push_back(u(gen));
            for (int i = 0; i <= n - (trial % 2); ++i) num.push_back(u(gen));
            const TransferFunction tf{Polynomial(num), Polynomial(den)};
            const auto ss = to_state_space(tf);
            for (int k = 0; k < 20; ++k) {
                const double w = std::pow(10.0, -2.0 + 4.0 * k / 19.0);
                const auto expect = tf({0.0, w});
                const auto got = ss.frequency_response(w);
                CHECK(std::abs(got - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
            }
        }
    }
}

TEST_SUITE("step response") {
    TEST_CASE("first-order lag") {
        const auto r = step_response({Polynomial{1}, Polynomial{1, 1}}, 0.01, 15.0);
        REQUIRE(r.size() == 1501);
        CHECK(r.y[0] == 0.0);
        CHECK(std::abs(r.y[100] - 0.63212) <= 1e-4);
        double worst = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) {
            worst = std::max(worst, std::abs(r.y[k] - (1.0 - std::exp(-r.t[k]))));
            REQUIRE(r.e[k] == 1.0 - r.y[k]);
            REQUIRE(r.t[k] == static_cast<double>(k) * 0.01);
        }
        CHECK(worst <= 1e-6);
        CHECK_FALSE(r.diverged);
    }

    TEST_CASE("biproper starts at D") {
        const auto r = step_response({Polynomial{1, 2}, Polynomial{1, 1}}, 0.01, 1.0);
        CHECK(r.y[0] == 1.0);
        CHECK(r.y.back() == Approx(2.0 - std::exp(-1.0)).epsilon(1e-8));
    }

    TEST_CASE("grid length") {
        CHECK(sample_count(0.01, 15.0) == 1501);
        CHECK(sample_count(0.1, 0.35) == 4);
        CHECK_THROWS_AS(sample_count(0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(sample_count(0.1, 0.05), std::invalid_argument);
    }

    TEST_CASE("unstable system is flagged and clamped") {
        const auto r = step_response({Polynomial{1}, Polynomial{1, -5}}, 0.01, 15.0);
        CHECK(r.diverged);
        CHECK(r.size() == 1501);
        CHECK(r.y.back() == r.y[r.size() - 2]);
        for (std::size_t k = 0; k < r.size(); ++k) REQUIRE(std::isfinite(r.y[k]));
    }

    TEST_CASE("marginal integrator from P-only controller s/s") {
        const TransferFunction g{Polynomial{1}, Polynomial{1, 1}};
        const auto t = closed_loop(pid_tf({0, 1, 0}), g, TransferFunction{});
        const auto r = step_response(t, 0.01, 15.0);
        CHECK_FALSE(r.diverged);
        CHECK(r.y.back() == Approx(0.5).epsilon(1e-6));
    }

    TEST_CASE("propagator equals stage-wise RK4") {
        const auto ss = to_state_space({Polynomial{0.5, 2, 1}, Polynomial{1, 3, 4, 2}});
        const Rk4Propagator prop(ss, 0.01);
        Eigen::VectorXd a = Eigen::VectorXd::Zero(3), b = a;
        for (int k = 0; k < 500; ++k) {
            const double u = std::sin(0.1 * k);
            prop.step(a, u);
            b = rk4_step(ss, b, u, 0.01);
        }
        CHECK((a - b).norm() <= 1e-12 * std::max(1.0, b.norm()));
    }
}
