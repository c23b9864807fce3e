#include <doctest.h>

#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/ode.hpp"
#include "blowup/solver.hpp"

using namespace blowup;

namespace {

SolverConfig small_config(double p = 4.0, int N = 3, int nr = 512) {
    SolverConfig c;
    c.e = make_exponents(p, N);
    c.grid = make_radial_grid(2.5, nr);
    return c;
}

}  // namespace

TEST_CASE("discrete Laplacian is exact on r^2 and r^4 away from the boundary") {
    for (int N : {2, 3, 4}) {
        const auto e = make_exponents(N == 2 ? 6.0 : (N == 3 ? 4.0 : 2.5), N);
        const double dr = 0.01;
        std::vector<double> u(64), acc(64);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = 1e-3 * std::pow(i * dr, 2);
        acceleration(e, dr, u, acc);
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            const double f = std::pow(std::abs(u[i]), e.p - 1) * u[i];
            CHECK(acc[i] - f == doctest::Approx(1e-3 * 2 * N).epsilon(1e-9));
        }
        CHECK(acc.back() == 0.0);
    }
}

TEST_CASE("spatially constant data follows the ODE inside the cone of influence") {
    auto c = small_config(4.0, 3, 1024);
    c.init.family = InitialFamily::OdePlateau;
    c.init.blowup_time = 1.0;
    const auto st0 = initial_state(c);
    const auto [u0, u1] = ode_exact(c.e, 1.0, 0.0);
    CHECK(st0.u[0] == doctest::Approx(u0));
    CHECK(st0.ut[0] == doctest::Approx(u1));
    PhysicalState st = st0;
    const double dt = 0.25 * c.grid.dr;
    while (st.t < 0.5) st = step(st, c, dt);
    CHECK(st.u[0] == doctest::Approx(ode_exact(c.e, 1.0, st.t).first).epsilon(1e-5));
}

TEST_CASE("finite propagation speed on the grid") {
    // a compact pulse moves at most one node per step
    auto c = small_config(4.0, 3, 256);
    c.init.family = InitialFamily::Zero;
    PhysicalState st = initial_state(c);
    const int n0 = 128;
    st.u[n0] = 1e-3;
    const int steps = 40;
    for (int k = 0; k < steps; ++k) st = step(st, c);
    for (int i = 0; i < c.grid.nr; ++i)
        if (std::abs(i - n0) > steps + 2) CHECK(st.u[i] == 0.0);
    CHECK(st.u[n0 - steps] != 0.0);
}

TEST_CASE("zero data never blows up") {
    auto c = small_config();
    c.init.family = InitialFamily::Zero;
    c.t_max = 2.0;
    const auto run = run_until_blowup(c);
    CHECK_FALSE(run.blew_up);
    CHECK(run.t_final >= 2.0);
}

TEST_CASE("ODE plateau blows up at the ODE time with the ODE rate") {
    auto c = small_config(4.0, 3, 1024);
    const auto run = run_until_blowup(c);
    REQUIRE(run.blew_up);
    CHECK(run.T_est == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(run.exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-3));
    CHECK(run.center.norm() == 0.0);
    // stored states are time ordered and truncated near blow-up
    const auto& states = run.trajectory.states;
    for (std::size_t i = 1; i < states.size(); ++i) CHECK(states[i].t > states[i - 1].t);
    CHECK(states.back().u.size() < states.front().u.size());
}

TEST_CASE("configuration errors") {
    auto c = small_config();
    c.cfl = 1.5;
    CHECK_THROWS_AS(validate(c), InvalidParameter);
    c = small_config();
    c.init.plateau_radius = 0.8;  // cone of the center would see the taper
    CHECK_THROWS_AS(validate(c), InvalidParameter);
    c = small_config();
    c.init.plateau_radius = 2.2;
    CHECK_THROWS_AS(validate(c), InvalidParameter);
    CHECK_THROWS_AS(parse_initial_family("square"), InvalidParameter);
    CHECK(parse_initial_family("gaussian") == InitialFamily::Gaussian);
}
