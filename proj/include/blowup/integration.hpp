#pragma once

#include <span>
#include <vector>

namespace blowup {

bool is_uniform(std::span<const double> s, double rel_tol = 1e-9);

double trapezoid(std::span<const double> s, std::span<const double> f);

// integrals over [s_j, s_{j+1}]; fourth order on uniform grids with >= 4 points, trapezoid otherwise
std::vector<double> interval_integrals(std::span<const double> s, std::span<const double> f);

// out[i] = integral from s_i to s_last
std::vector<double> tail_integrals(std::span<const double> s, std::span<const double> f);

// integral over [S, inf) of tau^gamma exp(-b (tau - S)), b > 0, gamma > -1
double power_exp_tail(double gamma, double b, double S);

}  // namespace blowup
