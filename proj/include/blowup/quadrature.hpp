#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace blowup {

using Vec3 = Eigen::Vector3d;

// Full: tensor grid over the sphere (N = 2 or 3).
// Radial: one direction carrying the whole sphere measure; exact only for
// radial integrands, but available in any dimension.
enum class AngularMode { Full, Radial };

struct BallQuadrature {
    int N = 0;
    double beta = 0;
    AngularMode mode = AngularMode::Full;
    std::vector<double> radial_nodes;
    std::vector<double> radial_weights;  // for (1-r^2)^beta r^(N-1) dr on (0,1)
    std::vector<Vec3> directions;
    std::vector<double> direction_weights;  // sum to |S^(N-1)|
    std::vector<Vec3> nodes;                // radial-major
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// quadrature over the unit sphere, with the same directions as the ball rule
struct SphereRule {
    int N = 0;
    std::vector<Vec3> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// Gauss-Jacobi nodes/weights on (-1,1) for (1-x)^a (1+x)^b
std::pair<std::vector<double>, std::vector<double>> gauss_jacobi(int n, double a, double b);

BallQuadrature build_rule(int N, double beta, int n_radial, int n_angular,
                          AngularMode mode = AngularMode::Full);

SphereRule sphere_rule(const BallQuadrature& rule);

double pairwise_sum(std::span<const double> v);

// values[i] is the integrand at rule.nodes[i]
double integrate(const BallQuadrature& rule, std::span<const double> values);
double integrate(const BallQuadrature& rule, const std::function<double(const Vec3&)>& f);
double integrate(const SphereRule& rule, std::span<const double> values);

struct GradSplit {
    Vec3 radial;
    Vec3 angular;
};

GradSplit grad_decompose(const Vec3& y, const Vec3& grad);

}  // namespace blowup
