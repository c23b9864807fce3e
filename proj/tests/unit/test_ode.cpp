#include <doctest.h>

#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/ode.hpp"

using namespace blowup;

TEST_CASE("closed-form ODE branch solves u'' = u^p") {
    for (double p : {3.5, 4.0, 4.5}) {
        const auto e = make_exponents(p, 3);
        const double T = 1.3, t = 0.4, h = 1e-4;
        const auto [u, ut] = ode_exact(e, T, t);
        const double um = ode_exact(e, T, t - h).first, up = ode_exact(e, T, t + h).first;
        CHECK((up - um) / (2 * h) == doctest::Approx(ut).epsilon(1e-7));
        CHECK((up - 2 * u + um) / (h * h) == doctest::Approx(std::pow(u, p)).epsilon(1e-6));
        CHECK_THROWS_AS(ode_exact(e, T, T), InvalidParameter);
    }
}

TEST_CASE("RK4 integration reaches the cap near the exact blow-up time") {
    for (double p : {3.5, 4.0, 4.5}) {
        const auto e = make_exponents(p, 3);
        const auto [u0, u1] = ode_exact(e, 1.0, 0.0);
        const auto traj = ode_integrate(u0, u1, e, 1e-3, 1e8);
        REQUIRE(traj.blew_up);
        CHECK(traj.T == doctest::Approx(1.0).epsilon(1e-6));
        // compare in time: the exact branch through (t, u) blows up at t + (kappa/u)^((p-1)/2)
        double worst = 0;
        for (const auto& s : traj.samples)
            worst = std::max(worst, std::abs(s.t + std::pow(kappa(e) / s.u, (p - 1) / 2) - 1.0));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("fit recovers T and the exponent from exact samples") {
    const auto e = make_exponents(4.0, 3);
    std::vector<double> t, u;
    for (int i = 0; i < 400; ++i) {
        const double lam = std::pow(10.0, -1.0 - 0.02 * i);
        t.push_back(2.0 - lam);
        u.push_back(ode_exact(e, 2.0, t.back()).first);
    }
    const auto fit = fit_blowup(t, u, e, 10.0, 1e300);
    CHECK(fit.T_est == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit.exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-6));
    CHECK(fit.log_amplitude == doctest::Approx(std::log(kappa(e))).epsilon(1e-6));
    CHECK(fit.r2 > 0.999999);
}

TEST_CASE("fit rejects data without an asymptotic window") {
    const auto e = make_exponents(4.0, 3);
    std::vector<double> t = {0, 1, 2}, u = {1, 2, 3};
    CHECK_THROWS_AS(fit_blowup(t, u, e), FitFailed);
}

TEST_CASE("negative data blows up downward") {
    const auto e = make_exponents(4.0, 3);
    const auto traj = ode_integrate(-1.0, 0.0, e, 1e-3, 1e6);
    REQUIRE(traj.blew_up);
    CHECK(traj.samples.back().u < 0);
}
