#include "blowup/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "blowup/errors.hpp"
#include "blowup/model.hpp"

namespace blowup {

std::pair<std::vector<double>, std::vector<double>> gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw InvalidParameter("gauss_jacobi needs at least one node");
    if (a <= -1 || b <= -1) throw InvalidParameter(fmt::format("Jacobi exponents ({}, {}) must exceed -1", a, b));

    // Golub-Welsch on the Jacobi matrix of the monic recurrence
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * k + ab;
        if (k == 0)
            diag(k) = (b - a) / (ab + 2.0);
        else
            diag(k) = (b * b - a * a) / (t * (t + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        const double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
        const double den = t * t * (t + 1.0) * (t - 1.0);
        sub(k - 1) = std::sqrt(num / den);
    }
    std::vector<double> x(n), w(n);
    const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0)
                           - std::lgamma(ab + 2.0);
    if (n == 1) {
        x[0] = diag(0);
        w[0] = std::exp(log_mu0);
        return {x, w};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalError("Jacobi matrix eigensolve failed");
    const double mu0 = std::exp(log_mu0);
    for (int i = 0; i < n; ++i) {
        x[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        w[i] = mu0 * v0 * v0;
    }
    return {x, w};
}

namespace {

void angular_grid(int N, int n_angular, std::vector<Vec3>& dirs, std::vector<double>& wts) {
    if (N == 2) {
        const int m = n_angular;
        for (int j = 0; j < m; ++j) {
            const double th = 2.0 * std::numbers::pi * j / m;
            dirs.emplace_back(std::cos(th), std::sin(th), 0.0);
            wts.push_back(2.0 * std::numbers::pi / m);
        }
        return;
    }
    // N == 3: Gauss-Legendre in cos(theta), periodic trapezoid in phi
    auto [ct, wct] = gauss_jacobi(n_angular, 0.0, 0.0);
    const int m = 2 * n_angular;
    for (int i = 0; i < n_angular; ++i) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct[i] * ct[i]));
        for (int j = 0; j < m; ++j) {
            const double ph = 2.0 * std::numbers::pi * j / m;
            dirs.emplace_back(st * std::cos(ph), st * std::sin(ph), ct[i]);
            wts.push_back(wct[i] * 2.0 * std::numbers::pi / m);
        }
    }
}

}  // namespace

BallQuadrature build_rule(int N, double beta, int n_radial, int n_angular, AngularMode mode) {
    if (!(beta > -1.0)) throw InvalidParameter(fmt::format("weight exponent beta={} is not integrable (needs > -1)", beta));
    if (n_radial < 4) throw InvalidParameter(fmt::format("n_radial={} must be at least 4", n_radial));
    if (N < 2) throw InvalidParameter(fmt::format("dimension N={} must be at least 2", N));
    if (mode == AngularMode::Full) {
        if (N != 2 && N != 3)
            throw InvalidParameter(fmt::format("full angular grids exist for N=2,3 only (got N={}); use the radial mode", N));
        if (n_angular < 2) throw InvalidParameter(fmt::format("n_angular={} must be at least 2", n_angular));
    }

    BallQuadrature q;
    q.N = N;
    q.beta = beta;
    q.mode = mode;

    // u = r^2 turns (1-r^2)^beta r^(N-1) dr into (1/2)(1-u)^beta u^((N-2)/2) du
    const double gamma = (N - 2) / 2.0;
    auto [x, wx] = gauss_jacobi(n_radial, beta, gamma);
    const double scale = std::pow(2.0, -beta - gamma - 2.0);
    for (int i = 0; i < n_radial; ++i) {
        q.radial_nodes.push_back(std::sqrt((1.0 + x[i]) / 2.0));
        q.radial_weights.push_back(wx[i] * scale);
    }

    if (mode == AngularMode::Full) {
        angular_grid(N, n_angular, q.directions, q.direction_weights);
    } else {
        q.directions.emplace_back(1.0, 0.0, 0.0);
        q.direction_weights.push_back(unit_sphere_area(N));
    }

    q.nodes.reserve(q.radial_nodes.size() * q.directions.size());
    for (std::size_t i = 0; i < q.radial_nodes.size(); ++i)
        for (std::size_t j = 0; j < q.directions.size(); ++j) {
            q.nodes.push_back(q.radial_nodes[i] * q.directions[j]);
            q.weights.push_back(q.radial_weights[i] * q.direction_weights[j]);
        }
    return q;
}

SphereRule sphere_rule(const BallQuadrature& rule) {
    SphereRule s;
    s.N = rule.N;
    s.nodes = rule.directions;
    s.weights = rule.direction_weights;
    return s;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double acc = 0.0;
        for (double x : v) acc += x;
        return acc;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

double integrate(const BallQuadrature& rule, std::span<const double> values) {
    if (values.size() != rule.size())
        throw InvalidParameter(fmt::format("integrand has {} values for a rule with {} nodes", values.size(), rule.size()));
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            const Vec3& y = rule.nodes[i];
            throw NumericalError(fmt::format("non-finite integrand {} at node {} (y = [{}, {}, {}], beta={})",
                                             values[i], i, y.x(), y.y(), y.z(), rule.beta));
        }
        terms[i] = values[i] * rule.weights[i];
    }
    return pairwise_sum(terms);
}

double integrate(const BallQuadrature& rule, const std::function<double(const Vec3&)>& f) {
    std::vector<double> vals(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) vals[i] = f(rule.nodes[i]);
    return integrate(rule, vals);
}

double integrate(const SphereRule& rule, std::span<const double> values) {
    if (values.size() != rule.size())
        throw InvalidParameter(fmt::format("sphere integrand has {} values for {} nodes", values.size(), rule.size()));
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw NumericalError(fmt::format("non-finite boundary integrand at sphere node {}", i));
        terms[i] = values[i] * rule.weights[i];
    }
    return pairwise_sum(terms);
}

GradSplit grad_decompose(const Vec3& y, const Vec3& grad) {
    const double r2 = y.squaredNorm();
    if (r2 == 0.0) return {Vec3::Zero(), grad};
    const Vec3 radial = (y.dot(grad) / r2) * y;
    return {radial, grad - radial};
}

}  // namespace blowup
