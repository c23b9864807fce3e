#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "blowup/errors.hpp"
#include "blowup/model.hpp"
#include "blowup/quadrature.hpp"

using namespace blowup;

namespace {

// int_B |y|^(2k) (1-|y|^2)^beta dy = |S| B(k + N/2, beta + 1) / 2
double radial_moment(int N, int k, double beta) {
    return unit_sphere_area(N) * boost::math::beta(k + N / 2.0, beta + 1.0) / 2.0;
}

}  // namespace

TEST_CASE("Gauss-Jacobi reproduces Jacobi-weight moments") {
    for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.4, 0.5}, {1.1, -0.5}, {2.0, 1.0}}) {
        const int n = 8;
        const auto [x, w] = gauss_jacobi(n, a, b);
        for (int k = 0; k < 2 * n; ++k) {
            double q = 0;
            for (int i = 0; i < n; ++i) q += w[i] * std::pow(x[i], k);
            // with x = 2t - 1 each moment is a finite sum of Beta functions
            double ref = 0, scale = 0;
            for (int j = 0; j <= k; ++j) {
                const double term = boost::math::binomial_coefficient<double>(k, j) * std::pow(2.0, j) *
                                    boost::math::beta(b + j + 1, a + 1);
                ref += (k - j) % 2 ? -term : term;
                scale += term;
            }
            const double f = std::pow(2.0, a + b + 1);
            CHECK(std::abs(q - f * ref) <= 1e-14 * f * scale);
        }
    }
}

TEST_CASE("ball rules are exact on even radial polynomials up to degree 4n-2") {
    for (int N : {2, 3})
        for (double beta : {0.0, -0.4, 0.6, 1.1, -0.5}) {
            const int n = 6;
            const auto rule = build_rule(N, beta, n, 8);
            for (int k = 0; 2 * k <= 4 * n - 2; ++k) {
                const double q = integrate(rule, [&](const Vec3& y) { return std::pow(y.squaredNorm(), k); });
                CHECK(q == doctest::Approx(radial_moment(N, k, beta)).epsilon(1e-12));
            }
            // one degree further is no longer exact
            const int k = 2 * n;
            const double q = integrate(rule, [&](const Vec3& y) { return std::pow(y.squaredNorm(), k); });
            CHECK(std::abs(q / radial_moment(N, k, beta) - 1) > 1e-14);
        }
}

TEST_CASE("angular moments") {
    for (int N : {2, 3}) {
        const auto rule = build_rule(N, 0.0, 8, 8);
        const double S = unit_sphere_area(N);
        const double r2 = radial_moment(N, 1, 0.0) / S;  // int_0^1 r^(N+1) dr
        const double r4 = radial_moment(N, 2, 0.0) / S;
        CHECK(integrate(rule, [](const Vec3& y) { return y[0] * y[0]; }) == doctest::Approx(S / N * r2));
        CHECK(integrate(rule, [](const Vec3& y) { return std::pow(y[0], 4); }) ==
              doctest::Approx(3 * S / (N * (N + 2.0)) * r4));
        CHECK(std::abs(integrate(rule, [](const Vec3& y) { return y[0] * y[1]; })) < 1e-14);
        CHECK(std::abs(integrate(rule, [](const Vec3& y) { return std::pow(y[0], 3); })) < 1e-14);
        const auto sph = sphere_rule(rule);
        double area = 0;
        for (double w : sph.weights) area += w;
        CHECK(area == doctest::Approx(S));
    }
}

TEST_CASE("radial mode carries the whole sphere in any dimension") {
    for (int N : {2, 3, 4, 5}) {
        const auto rule = build_rule(N, 0.6, 10, 1, AngularMode::Radial);
        CHECK(rule.directions.size() == 1);
        const double q = integrate(rule, [](const Vec3& y) { return std::exp(-y.squaredNorm()); });
        // int_0^1 e^{-r^2} (1-r^2)^0.6 r^(N-1) dr times |S|, by adaptive quadrature
        auto f = [N](double r) { return std::exp(-r * r) * std::pow(1 - r * r, 0.6) * std::pow(r, N - 1); };
        const double ref =
            unit_sphere_area(N) * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-14);
        CHECK(q == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("weights are positive and rule construction is validated") {
    const auto rule = build_rule(3, -0.4, 12, 6);
    for (double w : rule.weights) CHECK(w > 0);
    CHECK_THROWS_AS(build_rule(3, -1.0, 12, 6), InvalidParameter);
    CHECK_THROWS_AS(build_rule(3, 0.0, 2, 6), InvalidParameter);
    CHECK_THROWS_AS(build_rule(4, 0.0, 8, 6), InvalidParameter);
}

TEST_CASE("non-finite integrand values are reported") {
    const auto rule = build_rule(2, 0.0, 4, 4);
    std::vector<double> v(rule.size(), 1.0);
    v[3] = std::nan("");
    CHECK_THROWS_AS(integrate(rule, v), NumericalError);
}

TEST_CASE("pairwise sum") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> v(10001);
    long double ref = 0;
    for (auto& x : v) {
        x = u(rng);
        ref += x;
    }
    CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-15));
}

TEST_CASE("gradient split") {
    const Vec3 y(0.3, -0.2, 0.5), g(1.0, 2.0, -0.5);
    const auto sp = grad_decompose(y, g);
    CHECK((sp.radial + sp.angular - g).norm() < 1e-15);
    CHECK(std::abs(sp.angular.dot(y)) < 1e-15);
    CHECK(std::pow(y.dot(g), 2) == doctest::Approx(y.squaredNorm() * sp.radial.squaredNorm()));
    const auto at0 = grad_decompose(Vec3::Zero(), g);
    CHECK(at0.radial.norm() == 0.0);
}
