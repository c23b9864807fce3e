#pragma once

#include <memory>
#include <span>
#include <vector>

#include "blowup/snapshot.hpp"
#include "blowup/solver.hpp"

namespace blowup {

// radial data at one time on the uniform solver grid
struct RadialProfile {
    double t = 0;
    double dr = 0;
    std::vector<double> u, ut;
};

struct RadialPoint {
    double u = 0;
    double ur = 0;
    double ut = 0;
};

// 4-point Lagrange in r, even reflection through the origin
RadialPoint interpolate(const RadialProfile& prof, double r);

// cubic Hermite in t between stored states (u with u_t, u_t with u_tt);
// nodes up to r_needed plus the interpolation stencil are produced
RadialProfile profile_at(const Trajectory& traj, double t, double r_needed);

SimilaritySnapshot to_similarity(const RadialProfile& prof, const Exponents& e, const Vec3& x0, double T0,
                                 std::shared_ptr<const RuleSet> rules);
SimilaritySnapshot to_similarity(const PhysicalState& state, double dr, const Exponents& e, const Vec3& x0,
                                 double T0, std::shared_ptr<const RuleSet> rules);

std::vector<SimilaritySnapshot> trajectory_to_w(const Trajectory& traj, const Vec3& x0, double T0,
                                                std::span<const double> s_grid,
                                                std::shared_ptr<const RuleSet> rules);

// T*(x) = T0 - delta0 |x - x0|
double shifted_blowup_time(double T0, double delta0, const Vec3& x, const Vec3& x0);

// uniform grid s0, s0+ds, ..., up to s1 (inclusive within round-off)
std::vector<double> uniform_s_grid(double s0, double s1, double ds);

}  // namespace blowup
