#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "blowup/model.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

enum class InitialFamily { Zero, ConstantPlateau, Gaussian, OdePlateau };

std::string to_string(InitialFamily f);
InitialFamily parse_initial_family(const std::string& name);

struct InitialData {
    InitialFamily family = InitialFamily::OdePlateau;
    double amplitude = 1.0;  // plateau height or Gaussian peak
    double velocity = 0.0;   // plateau u_t
    double width = 1.0;      // Gaussian width
    double blowup_time = 1.0;  // ODE-seeded plateau: blow-up time of the ODE branch
    double plateau_radius = 1.5;
    double taper = 0.5;  // cos^2 ramp to zero outside the plateau
    double bump_amplitude = 0.0;
    double bump_width = 0.3;
};

struct SolverConfig {
    Exponents e;
    RadialGrid grid;
    double cfl = 0.5;
    double eta = 0.02;  // dt <= eta * (kappa/max|u|)^((p-1)/2)
    double u_cap = 1e8;
    double store_ds = 1.0 / 64.0;
    double store_radius_factor = 4.0;
    double fit_lo = 1e3;
    double t_max = 50.0;
    std::size_t max_steps = 50'000'000;
    InitialData init;
};

void validate(const SolverConfig& cfg);

PhysicalState initial_state(const SolverConfig& cfg);

// u_rr + (N-1)/r u_r + |u|^(p-1) u; N u_rr at the origin, zero at the Dirichlet node
void acceleration(const Exponents& e, double dr, std::span<const double> u, std::span<double> out);
double acceleration_at(const Exponents& e, double dr, std::span<const double> u, std::size_t i);

// local blow-up time scale (kappa/max|u|)^((p-1)/2), infinite for u == 0
double blowup_scale(const Exponents& e, std::span<const double> u);

// one kick-drift-kick step with dt = cfl*dr
PhysicalState step(const PhysicalState& s, const SolverConfig& cfg);
PhysicalState step(const PhysicalState& s, const SolverConfig& cfg, double dt);

struct Trajectory {
    Exponents e;
    double dr = 0;
    std::vector<PhysicalState> states;  // truncated to the radius that can still matter
    std::vector<double> center_t, center_u, max_u;
};

struct BlowupRun {
    Trajectory trajectory;
    bool blew_up = false;
    double T_est = 0;
    double exponent = 0;
    double fit_r2 = 0;
    Vec3 center = Vec3::Zero();
    std::size_t steps = 0;
    double t_final = 0;
};

BlowupRun run_until_blowup(const SolverConfig& cfg);

}  // namespace blowup
