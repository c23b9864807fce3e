#pragma once

#include <span>
#include <utility>
#include <vector>

#include "blowup/model.hpp"

namespace blowup {

struct OdeSample {
    double t;
    double u;
    double ut;
};

struct OdeTrajectory {
    double p = 0;
    double T = 0;  // estimated blow-up time (NaN if no blow-up)
    bool blew_up = false;
    std::vector<OdeSample> samples;
};

// u = kappa (T-t)^(-2/(p-1)) and its time derivative
std::pair<double, double> ode_exact(const Exponents& e, double T, double t);

struct OdeOptions {
    double eta = 1e-3;  // step cap relative to the local blow-up time scale
    std::size_t max_steps = 20'000'000;
    double t_max = 1e3;
};

// RK4 for u'' = |u|^(p-1) u. The step is min(dt, eta (kappa/|u|)^((p-1)/2)),
// so the cap is reached without stepping over the singularity.
OdeTrajectory ode_integrate(double u0, double u1, const Exponents& e, double dt, double u_cap,
                            const OdeOptions& opt = {});

struct BlowupFit {
    double T_est = 0;
    double exponent = 0;
    double log_amplitude = 0;  // intercept of log|u| against log(T-t)
    double r2 = 0;
    std::size_t n_used = 0;
};

// fit log|u| = c + b log(T - t) with T as the nonlinear parameter,
// using samples with lo <= |u| <= hi
BlowupFit fit_blowup(std::span<const double> t, std::span<const double> u, const Exponents& e,
                     double lo = 1e3, double hi = 1e300);
BlowupFit fit_blowup(const OdeTrajectory& traj, const Exponents& e, double lo = 1e3, double hi = 1e300);

}  // namespace blowup
