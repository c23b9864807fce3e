#include <doctest.h>

#include <cmath>
#include <random>

#include "blowup/polynomial.hpp"
#include "blowup/test_field.hpp"

using namespace blowup;

namespace {

Vec3 fd_gradient(const std::function<double(const Vec3&)>& f, const Vec3& y, int N, double h = 1e-5) {
    Vec3 g = Vec3::Zero();
    for (int k = 0; k < N; ++k) {
        Vec3 e = Vec3::Zero();
        e[k] = h;
        g[k] = (f(y + e) - f(y - e)) / (2 * h);
    }
    return g;
}

Vec3 random_point(std::mt19937_64& rng, int N) {
    std::uniform_real_distribution<double> u(-0.55, 0.55);
    Vec3 y = Vec3::Zero();
    for (int k = 0; k < N; ++k) y[k] = u(rng);
    return y;
}

}  // namespace

TEST_CASE("polynomial algebra") {
    const auto x = Polynomial::monomial({1, 0, 0});
    const auto y = Polynomial::monomial({0, 1, 0});
    const auto p = (x + y) * (x + y * -1.0);  // x^2 - y^2
    const Vec3 v(0.3, -0.7, 0.2);
    CHECK(p(v) == doctest::Approx(0.09 - 0.49));
    CHECK(p.degree() == 2);
    CHECK(Polynomial::angular_mode(2)(v) == doctest::Approx(0.09 - 0.49));
    CHECK(Polynomial::angular_mode(3)(v) == doctest::Approx(std::pow(0.3, 3) - 3 * 0.3 * 0.49));
}

TEST_CASE("polynomial derivatives match finite differences") {
    std::mt19937_64 rng(11);
    for (int N : {2, 3}) {
        const auto q = random_polynomial(N, 5, rng);
        for (int t = 0; t < 5; ++t) {
            const Vec3 y = random_point(rng, N);
            CHECK((q.gradient(y) - fd_gradient(q, y, N)).norm() < 1e-8);
            const Mat3 H = q.hessian(y);
            for (int k = 0; k < N; ++k) {
                auto dk = [&](const Vec3& z) { return q.gradient(z)[k]; };
                CHECK((H.row(k).transpose() - fd_gradient(dk, y, N)).norm() < 1e-7);
            }
        }
    }
}

TEST_CASE("angular modes are harmonic") {
    const Vec3 y(0.2, 0.4, -0.1);
    for (int m = 0; m <= 4; ++m) CHECK(std::abs(Polynomial::angular_mode(m).hessian(y).trace()) < 1e-12);
}

TEST_CASE("test field derivatives") {
    std::mt19937_64 rng(5);
    for (int N : {2, 3})
        for (int t = 0; t < 6; ++t) {
            const TestField f = random_test_field(N, rng);
            auto val = [&](const Vec3& z) { return f.value(z); };
            const Vec3 y = random_point(rng, N);
            CHECK((f.gradient(y) - fd_gradient(val, y, N)).norm() < 1e-7 * (1 + f.gradient(y).norm()));
            CHECK(f.laplacian(y) == doctest::Approx(f.hessian(y).topLeftCorner(N, N).trace()));
            // divergence form against finite differences of the flux rho (grad w - (y.grad w) y)
            const double eps = 0.6;
            auto flux = [&](const Vec3& z, int k) {
                const Vec3 g = f.gradient(z);
                return std::pow(1 - z.squaredNorm(), eps) * (g[k] - z.dot(g) * z[k]);
            };
            double div = 0;
            for (int k = 0; k < N; ++k) div += fd_gradient([&](const Vec3& z) { return flux(z, k); }, y, N)[k];
            CHECK(f.divergence_ratio(y, eps) * std::pow(1 - y.squaredNorm(), eps) ==
                  doctest::Approx(div).epsilon(1e-6).scale(1.0));
        }
}

TEST_CASE("fields with a boundary factor vanish on the sphere") {
    const TestField f(3, 2.0, Polynomial(1.5), 1);
    CHECK(f.value(Vec3(1, 0, 0)) == doctest::Approx(0.0));
    CHECK(f.value(Vec3(0.5, 0, 0)) == doctest::Approx(1.5 * 0.75 * 0.75 * 0.5));
    CHECK(f.gradient(Vec3(0, 1, 0)).norm() == doctest::Approx(0.0));
}
