#pragma once

#include <memory>
#include <span>
#include <vector>

#include "blowup/similarity.hpp"

namespace blowup {

struct TheoremSample {
    double s = 0;
    double lambda = 0;          // T0 - t
    double cone_integral = 0;   // log-weighted space-time gradient integral over the backward cone
    double boundary_energy = 0; // log-weighted energy with the radial derivative removed
    double scaled_l2 = 0;       // log-weighted, rescaled L^2 norm
    double lower_bound = 0;     // rescaled norms of u, u_t, grad u
};

struct TheoremReport {
    double q = 0;
    std::vector<TheoremSample> samples;
    double sup_cone = 0, sup_boundary = 0, sup_l2 = 0;
    double lower_floor = 0;
    double expected_l2_exponent = 0;  // 4 (N/(p+3) - 1/(p-1))
    double fitted_l2_exponent = 0;    // over the last decade of T0 - t
    bool l2_decreasing = false;
    bool cone_bounded = false;
};

TheoremReport theorem_quantities(const Trajectory& traj, const Vec3& x0, double T0, double q,
                                 std::span<const double> s_grid, std::shared_ptr<const RuleSet> rules);

}  // namespace blowup
