#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blowup/errors.hpp"
#include "blowup/model.hpp"

using namespace blowup;

TEST_CASE("exponents and the superconformal range") {
    const auto e = make_exponents(4.0, 3);
    CHECK(e.p_c == doctest::Approx(3.0));
    CHECK(e.p_S == doctest::Approx(5.0));
    CHECK(e.alpha == doctest::Approx(2.0 / 3.0 - 1.0));
    CHECK(std::isinf(make_exponents(6.0, 2).p_S));

    CHECK_THROWS_AS(make_exponents(3.0, 3), InvalidParameter);
    CHECK_THROWS_AS(make_exponents(5.0, 3), InvalidParameter);
    CHECK_THROWS_AS(make_exponents(2.0, 2), InvalidParameter);
    CHECK_THROWS_AS(make_exponents(4.0, 0), InvalidParameter);
    CHECK_THROWS_AS(make_exponents(std::nan(""), 3), InvalidParameter);
}

TEST_CASE("alpha is negative across the range") {
    for (int N : {2, 3, 4, 5})
        for (double t : {0.1, 0.5, 0.9}) {
            const double pc = 1.0 + 4.0 / (N - 1);
            const double pS = N > 2 ? 1.0 + 4.0 / (N - 2) : pc + 10.0;
            const auto e = make_exponents(pc + t * (pS - pc), N);
            CHECK(e.alpha < 0);
        }
}

TEST_CASE("constant state") {
    for (auto [p, N] : {std::pair{4.0, 3}, {2.5, 4}, {6.0, 2}}) {
        const auto e = make_exponents(p, N);
        const double k = kappa(e);
        CHECK(std::pow(k, p - 1) == doctest::Approx(2 * (p + 1) / ((p - 1) * (p - 1))));
        CHECK(mass_coefficient(e) == doctest::Approx(2 * (p + 1) / ((p - 1) * (p - 1))));
        CHECK(scaling_power(e) == doctest::Approx(2 / (p - 1)));
        CHECK(std::abs(constant_state_residual(e, k)) < 1e-12);
        CHECK(std::abs(constant_state_residual(e, -k)) < 1e-12);
        CHECK(constant_state_residual(e, 0.5 * k) < 0);
    }
}

TEST_CASE("ball and sphere measures") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
    CHECK(unit_ball_volume(4) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2.0));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("radial grid") {
    const auto g = make_radial_grid(1.5, 16);
    CHECK(g.dr == doctest::Approx(0.1));
    REQUIRE(g.nodes.size() == 16);
    CHECK(g.nodes.back() == 1.5);
    CHECK_THROWS_AS(make_radial_grid(2.0, 4), InvalidParameter);
    CHECK_THROWS_AS(make_radial_grid(-1.0, 64), InvalidParameter);
}

TEST_CASE("series must advance in s") {
    FunctionalSeries f;
    f.name = "x";
    f.push(0.0, 1.0);
    f.push(0.5, 2.0);
    CHECK(f.tail_bound.empty());
    f.push(1.0, 3.0, 0.25);
    REQUIRE(f.tail_bound.size() == 3);
    CHECK(f.tail_bound[0] == 0.0);
    CHECK_THROWS_AS(f.push(1.0, 0.0), InvalidParameter);
}
