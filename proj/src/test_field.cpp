#include "blowup/test_field.hpp"

#include <cmath>

#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup {

TestField::TestField(int N, double a, Polynomial q, int m, Polynomial ws)
    : N_(N), a_(a), q_(m > 0 ? q * Polynomial::angular_mode(m) : std::move(q)), ws_(std::move(ws)) {
    if (N < 2 || N > 3) throw InvalidParameter(fmt::format("test fields support N=2,3 (got {})", N));
    if (a < 0) throw InvalidParameter(fmt::format("boundary exponent a={} must be >= 0", a));
    if (m < 0) throw InvalidParameter("angular mode must be >= 0");
    if (q_.degree() > 6 + (m > 0 ? m : 0)) throw InvalidParameter("test polynomial degree exceeds 6");
}

namespace {

// (1-|y|^2)^a with gradient and Hessian
struct BoundaryFactor {
    double f;
    Vec3 g;
    Mat3 h;
};

BoundaryFactor boundary_factor(const Vec3& y, double a) {
    if (a == 0.0) return {1.0, Vec3::Zero(), Mat3::Zero()};
    const double phi = 1.0 - y.squaredNorm();
    const double f = std::pow(phi, a);
    const double d1 = a * std::pow(phi, a - 1.0);
    const double d2 = a == 1.0 ? 0.0 : a * (a - 1.0) * std::pow(phi, a - 2.0);
    BoundaryFactor b;
    b.f = f;
    b.g = -2.0 * d1 * y;
    b.h = 4.0 * d2 * (y * y.transpose()) - 2.0 * d1 * Mat3::Identity();
    return b;
}

}  // namespace

double TestField::value(const Vec3& y) const { return boundary_factor(y, a_).f * q_(y); }

Vec3 TestField::gradient(const Vec3& y) const {
    const auto b = boundary_factor(y, a_);
    return q_(y) * b.g + b.f * q_.gradient(y);
}

Mat3 TestField::hessian(const Vec3& y) const {
    const auto b = boundary_factor(y, a_);
    const Vec3 gq = q_.gradient(y);
    return q_(y) * b.h + b.g * gq.transpose() + gq * b.g.transpose() + b.f * q_.hessian(y);
}

double TestField::laplacian(const Vec3& y) const { return hessian(y).topLeftCorner(N_, N_).trace(); }

double TestField::divergence_ratio(const Vec3& y, double eps) const {
    // with V = grad w - (y.grad w) y:  div V = lap w - (N+1) y.grad w - y^T H y,
    // and grad(rho_eps).V / rho_eps = -2 eps (y.grad w)
    const Vec3 g = gradient(y);
    const Mat3 H = hessian(y);
    const double yg = y.dot(g);
    return H.topLeftCorner(N_, N_).trace() - (N_ + 1) * yg - y.dot(H * y) - 2.0 * eps * yg;
}

NodeValue TestField::sample(const Vec3& y) const {
    NodeValue v;
    v.w = value(y);
    v.ws = ws_.empty() ? 0.0 : ws_(y);
    v.grad = gradient(y);
    return v;
}

FieldSampler TestField::sampler() const {
    return [f = *this](const Vec3& y) { return f.sample(y); };
}

TestField random_test_field(int N, std::mt19937_64& rng, const RandomFieldOptions& opt) {
    std::uniform_int_distribution<int> deg(1, opt.max_degree);
    std::uniform_int_distribution<int> aa(0, opt.max_a);
    std::uniform_int_distribution<int> mm(0, opt.max_mode);
    const int d = deg(rng);
    const int a = aa(rng);
    const int m = mm(rng);
    Polynomial q = random_polynomial(N, d, rng);
    Polynomial ws = random_polynomial(N, 2, rng);
    return TestField(N, a, std::move(q), m, std::move(ws));
}

}  // namespace blowup
