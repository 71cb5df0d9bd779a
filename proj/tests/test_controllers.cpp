#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hosm/controllers.hpp"
#include "oracles.hpp"

using namespace hosm;
namespace oracle = hosm::testing;

TEST_CASE("sign_of") {
    CHECK(sign_of(-3.0) == -1.0);
    CHECK(sign_of(0.0) == 0.0);
    CHECK(sign_of(1e-300) == 1.0);
}

TEST_CASE("ControllerSpec validation") {
    ControllerSpec bad;
    bad.law = ControlLaw::relay;
    bad.order = 2;
    CHECK_THROWS_AS(bad.validate(), Error);

    ControllerSpec twist;
    twist.law = ControlLaw::twisting;
    twist.order = 2;
    twist.k0 = 1.0;
    twist.k1 = 2.0; // k0 <= k1
    CHECK_THROWS_AS(twist.validate(), Error);

    ControllerSpec negative;
    negative.law = ControlLaw::relay;
    negative.order = 1;
    negative.k0 = -1.0;
    CHECK_THROWS_AS(negative.validate(), Error);

    ControllerSpec qc;
    qc.law = ControlLaw::quasi_continuous;
    qc.order = 1;
    CHECK_THROWS_AS(qc.validate(), Error);
}

TEST_CASE("relay_control: pendulum arithmetic oracle") {
    const LtiSystem sys = oracle::pendulum();
    const Matrix c{{-3.2002, -1.9201, -4.5411, -0.7166}};
    const std::vector<double> x0{1, 1, 1, 1};

    ControllerSpec spec;
    spec.law = ControlLaw::relay;
    spec.order = 1;
    spec.k0 = 10.0;

    // Recompute every factor with plain loops.
    double sigma = 0.0, cax = 0.0, cb = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        sigma += c(0, j) * x0[j];
        cb += c(0, j) * sys.B(j, 0);
        double row_j = 0.0;
        for (std::size_t k = 0; k < 4; ++k) row_j += c(0, k) * sys.A(k, j);
        cax += row_j * x0[j];
    }
    const double expected = -(cax + 10.0 * (sigma > 0 ? 1.0 : -1.0)) / cb;
    CHECK(relay_control(sys, c, spec, x0) == doctest::Approx(expected).epsilon(1e-14));

    // drop_feedforward removes the CAx term.
    spec.drop_feedforward = true;
    CHECK(relay_control(sys, c, spec, x0) ==
          doctest::Approx(-10.0 * (sigma > 0 ? 1.0 : -1.0) / cb).epsilon(1e-14));
}

TEST_CASE("relay_control: closed-form corner cases") {
    // Double integrator with C = [1, 1]: CB = 1, CA = [0, 1].
    const LtiSystem sys = oracle::chain(2);
    const Matrix c{{1, 1}};
    ControllerSpec spec;
    spec.law = ControlLaw::relay;
    spec.order = 1;
    spec.k0 = 10.0;

    CHECK(relay_control(sys, c, spec, std::vector<double>{0, 0}) == 0.0);
    // sigma > 0, CAx = 0 -> u = -k0 / CB.
    CHECK(relay_control(sys, c, spec, std::vector<double>{1, 0}) == doctest::Approx(-10.0));

    // Relative degree 2 output has CB = 0: relay must refuse.
    CHECK_THROWS_AS(relay_control(sys, Matrix{{1, 0}}, spec, std::vector<double>{1, 0}), Error);
}

TEST_CASE("relay_control is affine on each side of the switching plane") {
    std::mt19937_64 rng(61);
    const LtiSystem sys = oracle::pendulum();
    const Matrix c{{-3.2002, -1.9201, -4.5411, -0.7166}};
    ControllerSpec spec;
    spec.law = ControlLaw::relay;
    spec.order = 1;
    SlidingController controller(sys, c, spec);

    auto sigma_of = [&](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t j = 0; j < 4; ++j) s += c(0, j) * x[j];
        return s;
    };

    int checked = 0;
    while (checked < 50) {
        std::vector<double> x(4), y(4);
        for (auto& v : x) v = std::uniform_real_distribution<double>(-2, 2)(rng);
        for (auto& v : y) v = std::uniform_real_distribution<double>(-2, 2)(rng);
        const double alpha = std::uniform_real_distribution<double>(0, 1)(rng);
        std::vector<double> mid(4);
        for (std::size_t j = 0; j < 4; ++j) mid[j] = alpha * x[j] + (1 - alpha) * y[j];
        if (sign_of(sigma_of(x)) != sign_of(sigma_of(y)) ||
            sign_of(sigma_of(mid)) != sign_of(sigma_of(x))) {
            continue; // want all three strictly on one side
        }
        const double interpolated =
            alpha * controller.control(x) + (1 - alpha) * controller.control(y);
        CHECK(controller.control(mid) == doctest::Approx(interpolated).epsilon(1e-10));
        ++checked;
    }
}

TEST_CASE("twisting_control: sign combinations and the motivational chain") {
    const LtiSystem chain3 = oracle::chain(3);
    const Matrix c{{1, 1, 0}}; // sigma = x1 + x2, CAB = 1, CA^2 x = x3
    ControllerSpec spec;
    spec.law = ControlLaw::twisting;
    spec.order = 2;
    spec.k0 = 5.0;
    spec.k1 = 2.0;

    // sigma > 0, sigmadot > 0, CA^2 x = 0: u = -(k0 + k1) / CAB.
    CHECK(twisting_control(chain3, c, spec, std::vector<double>{1, 1, 0}) ==
          doctest::Approx(-7.0));
    // sigma > 0, sigmadot < 0: u = -(k0 - k1) / CAB.
    CHECK(twisting_control(chain3, c, spec, std::vector<double>{3, -1, 0}) ==
          doctest::Approx(-3.0));

    // u = -x3 - k0 sign(sigma) - k1 sign(sigmadot), reproduced entry by entry.
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(3);
        for (auto& v : x) v = std::uniform_real_distribution<double>(-2, 2)(rng);
        const double sigma = x[0] + x[1];
        const double dsigma = x[1] + x[2];
        const double expected = -x[2] - 5.0 * sign_of(sigma) - 2.0 * sign_of(dsigma);
        CHECK(twisting_control(chain3, c, spec, x) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("quasi_continuous_2: declared values at and off the origin") {
    const LtiSystem chain2 = oracle::chain(2); // sigma = x1, sigmadot = x2, CAB = 1, CA^2 = 0
    const Matrix c{{1, 0}};
    ControllerSpec spec;
    spec.law = ControlLaw::quasi_continuous;
    spec.order = 2;
    spec.k0 = 10.0;

    CHECK(quasi_continuous_2(chain2, c, spec, std::vector<double>{1, 0}) ==
          doctest::Approx(-10.0));
    CHECK(quasi_continuous_2(chain2, c, spec, std::vector<double>{0, 0}) == 0.0);
    // sigma = 0, sigmadot = s: quotient is sign(s).
    CHECK(quasi_continuous_2(chain2, c, spec, std::vector<double>{0, -0.3}) ==
          doctest::Approx(10.0));
}

TEST_CASE("quasi_continuous_3: declared values at and off the origin") {
    const LtiSystem chain3 = oracle::chain(3); // sigma..sigmaddot = x1..x3, CA^2 B = 1, CA^3 = 0
    const Matrix c{{1, 0, 0}};
    ControllerSpec spec;
    spec.law = ControlLaw::quasi_continuous;
    spec.order = 3;
    spec.k0 = 10.0;

    // sigma = 1, rest 0: inner = 2 * 1^{-1/2} * 1 = 2, denominator = 2, u = -10.
    CHECK(quasi_continuous_3(chain3, c, spec, std::vector<double>{1, 0, 0}) ==
          doctest::Approx(-10.0));
    CHECK(quasi_continuous_3(chain3, c, spec, std::vector<double>{0, 0, 0}) == 0.0);
}

TEST_CASE("quasi-continuous nonlinear terms are bounded by k0") {
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);

    const LtiSystem chain2 = oracle::chain(2);
    const Matrix c2{{1, 0}};
    ControllerSpec spec2;
    spec2.law = ControlLaw::quasi_continuous;
    spec2.order = 2;
    spec2.k0 = 10.0;
    SlidingController qc2(chain2, c2, spec2);

    const LtiSystem chain3 = oracle::chain(3);
    const Matrix c3{{1, 0, 0}};
    ControllerSpec spec3 = spec2;
    spec3.order = 3;
    SlidingController qc3(chain3, c3, spec3);

    // CAB = CA^2 B = 1 and the feedforward vanishes on these chains, so |u|
    // is exactly the nonlinear term.
    for (int trial = 0; trial < 100000; ++trial) {
        const std::vector<double> x2{dist(rng), dist(rng)};
        CHECK(std::abs(qc2.control(x2)) <= 10.0 + 1e-12);
        const std::vector<double> x3{dist(rng), dist(rng), dist(rng)};
        CHECK(std::abs(qc3.control(x3)) <= 10.0 + 1e-12);
    }
}

TEST_CASE("quasi-continuous homogeneity") {
    std::mt19937_64 rng(64);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    const double kappas[] = {0.1, 2.0, 10.0};

    const LtiSystem chain2 = oracle::chain(2);
    const Matrix c2{{1, 0}};
    ControllerSpec spec2;
    spec2.law = ControlLaw::quasi_continuous;
    spec2.order = 2;
    spec2.k0 = 10.0;
    SlidingController qc2(chain2, c2, spec2);

    const LtiSystem chain3 = oracle::chain(3);
    const Matrix c3{{1, 0, 0}};
    ControllerSpec spec3 = spec2;
    spec3.order = 3;
    SlidingController qc3(chain3, c3, spec3);

    for (int trial = 0; trial < 200; ++trial) {
        const double s0 = dist(rng), s1 = dist(rng), s2 = dist(rng);
        for (double kappa : kappas) {
            // weights (kappa^2 sigma, kappa sigmadot)
            const double u = qc2.control(std::vector<double>{s0, s1});
            const double u_scaled =
                qc2.control(std::vector<double>{kappa * kappa * s0, kappa * s1});
            CHECK(std::abs(u_scaled - u) < 1e-9);

            // weights (kappa^3 sigma, kappa^2 sigmadot, kappa sigmaddot)
            const double v = qc3.control(std::vector<double>{s0, s1, s2});
            const double v_scaled = qc3.control(std::vector<double>{
                kappa * kappa * kappa * s0, kappa * kappa * s1, kappa * s2});
            CHECK(std::abs(v_scaled - v) < 1e-9);
        }
    }
}
