#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "blowup/integration.hpp"
#include "blowup/similarity.hpp"

using namespace blowup;

TEST_CASE("uniform grid detection") {
    const auto g = uniform_s_grid(0.5, 2.5, 0.25);
    CHECK(g.size() == 9);
    CHECK(g.back() == doctest::Approx(2.5));
    CHECK(is_uniform(g));
    CHECK_FALSE(is_uniform(std::vector<double>{0, 1, 3}));
}

TEST_CASE("interval integrals are fourth order on uniform grids") {
    // exact on cubics
    const auto s = uniform_s_grid(0.0, 2.0, 0.25);
    std::vector<double> f;
    for (double x : s) f.push_back(x * x * x - 2 * x + 1);
    const auto parts = interval_integrals(s, f);
    REQUIRE(parts.size() == s.size() - 1);
    auto F = [](double x) { return x * x * x * x / 4 - x * x + x; };
    for (std::size_t i = 0; i < parts.size(); ++i) CHECK(parts[i] == doctest::Approx(F(s[i + 1]) - F(s[i])));

    // observed order on a smooth function
    auto err = [](double h) {
        const auto g = uniform_s_grid(0.0, 1.0, h);
        std::vector<double> v;
        for (double x : g) v.push_back(std::exp(std::sin(3 * x)));
        const auto tails = tail_integrals(g, v);
        // reference from a much finer grid
        const auto gf = uniform_s_grid(0.0, 1.0, h / 16);
        std::vector<double> vf;
        for (double x : gf) vf.push_back(std::exp(std::sin(3 * x)));
        return std::abs(tails[0] - tail_integrals(gf, vf)[0]);
    };
    CHECK(std::log2(err(0.05) / err(0.025)) > 3.7);
}

TEST_CASE("trapezoid") {
    const std::vector<double> s = {0, 0.5, 2};
    const std::vector<double> f = {1, 2, 0};
    CHECK(trapezoid(s, f) == doctest::Approx(0.75 + 1.5));
}

TEST_CASE("power-exponential tail against adaptive quadrature") {
    for (double gam : {-17.0 / 18.0, -0.5, 0.0, 1.0 / 3.0})
        for (double b : {0.5, 2.0 / 3.0, 2.0})
            for (double S : {0.5, 4.0, 12.0}) {
                boost::math::quadrature::exp_sinh<double> es;
                const double ref =
                    es.integrate([&](double u) { return std::pow(S + u, gam) * std::exp(-b * u); }, 0.0,
                                 std::numeric_limits<double>::infinity());
                CHECK(power_exp_tail(gam, b, S) == doctest::Approx(ref).epsilon(1e-10));
            }
}
