#include "blowup/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "blowup/errors.hpp"
#include "blowup/ode.hpp"

namespace blowup {

std::string to_string(InitialFamily f) {
    switch (f) {
        case InitialFamily::Zero: return "zero";
        case InitialFamily::ConstantPlateau: return "constant_plateau";
        case InitialFamily::Gaussian: return "gaussian";
        case InitialFamily::OdePlateau: return "ode_plateau";
    }
    return "unknown";
}

InitialFamily parse_initial_family(const std::string& name) {
    for (auto f : {InitialFamily::Zero, InitialFamily::ConstantPlateau, InitialFamily::Gaussian,
                   InitialFamily::OdePlateau})
        if (to_string(f) == name) return f;
    throw InvalidParameter(
        fmt::format("unknown initial-data family '{}' (zero, constant_plateau, gaussian, ode_plateau)", name));
}

void validate(const SolverConfig& cfg) {
    if (!(cfg.cfl > 0 && cfg.cfl < 1)) throw InvalidParameter(fmt::format("cfl={} must lie in (0,1)", cfg.cfl));
    if (!(cfg.eta > 0)) throw InvalidParameter(fmt::format("eta={} must be positive", cfg.eta));
    if (!(cfg.u_cap > 1)) throw InvalidParameter(fmt::format("u_cap={} must exceed 1", cfg.u_cap));
    if (!(cfg.store_ds > 0)) throw InvalidParameter("store_ds must be positive");
    if (!(cfg.store_radius_factor >= 1)) throw InvalidParameter("store_radius_factor must be >= 1");
    if (cfg.grid.nr < 8) throw InvalidParameter("grid is not initialised");
    const auto& in = cfg.init;
    if (in.family == InitialFamily::OdePlateau) {
        if (!(in.blowup_time > 0)) throw InvalidParameter("ode_plateau needs blowup_time > 0");
        if (cfg.grid.r_max <= in.plateau_radius + in.taper)
            throw InvalidParameter(fmt::format("r_max={} must exceed plateau_radius + taper = {}", cfg.grid.r_max,
                                               in.plateau_radius + in.taper));
        if (in.plateau_radius <= in.blowup_time)
            throw InvalidParameter(fmt::format("plateau_radius={} must exceed blowup_time={} so the backward cone "
                                               "of the center sees only the plateau",
                                               in.plateau_radius, in.blowup_time));
    }
    if (in.family == InitialFamily::ConstantPlateau && cfg.grid.r_max <= in.plateau_radius + in.taper)
        throw InvalidParameter("r_max must exceed plateau_radius + taper");
    if (in.family == InitialFamily::Gaussian && !(in.width > 0)) throw InvalidParameter("gaussian width must be > 0");
}

namespace {

double taper_factor(double r, double R, double w) {
    if (r <= R) return 1.0;
    if (r >= R + w) return 0.0;
    const double c = std::cos(0.5 * std::numbers::pi * (r - R) / w);
    return c * c;
}

}  // namespace

PhysicalState initial_state(const SolverConfig& cfg) {
    validate(cfg);
    const auto& in = cfg.init;
    const auto& g = cfg.grid;
    PhysicalState st;
    st.u.assign(g.nr, 0.0);
    st.ut.assign(g.nr, 0.0);
    for (int i = 0; i < g.nr; ++i) {
        const double r = g.nodes[i];
        double u = 0, ut = 0;
        switch (in.family) {
            case InitialFamily::Zero: break;
            case InitialFamily::ConstantPlateau: {
                const double f = taper_factor(r, in.plateau_radius, in.taper);
                u = in.amplitude * f;
                ut = in.velocity * f;
                break;
            }
            case InitialFamily::Gaussian:
                u = in.amplitude * std::exp(-r * r / (in.width * in.width));
                break;
            case InitialFamily::OdePlateau: {
                const auto [u0, u1] = ode_exact(cfg.e, in.blowup_time, 0.0);
                const double f = taper_factor(r, in.plateau_radius, in.taper);
                u = u0 * f;
                ut = u1 * f;
                break;
            }
        }
        if (in.bump_amplitude != 0.0) u += in.bump_amplitude * std::exp(-r * r / (in.bump_width * in.bump_width));
        st.u[i] = u;
        st.ut[i] = ut;
    }
    st.u.back() = 0.0;
    st.ut.back() = 0.0;
    return st;
}

double acceleration_at(const Exponents& e, double dr, std::span<const double> u, std::size_t i) {
    const double f = std::pow(std::abs(u[i]), e.p - 1.0) * u[i];
    const double inv = 1.0 / (dr * dr);
    if (i == 0) return e.N * 2.0 * (u[1] - u[0]) * inv + f;
    const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv
                       + (e.N - 1) / (i * dr) * (u[i + 1] - u[i - 1]) / (2.0 * dr);
    return lap + f;
}

void acceleration(const Exponents& e, double dr, std::span<const double> u, std::span<double> out) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] = acceleration_at(e, dr, u, i);
    out[n - 1] = 0.0;
}

double blowup_scale(const Exponents& e, std::span<const double> u) {
    double m = 0;
    for (double x : u) m = std::max(m, std::abs(x));
    if (m == 0) return std::numeric_limits<double>::infinity();
    return std::pow(kappa(e) / m, (e.p - 1.0) / 2.0);
}

namespace {

void kick_drift_kick(const Exponents& e, double dr, double dt, PhysicalState& s, std::vector<double>& a) {
    const std::size_t n = s.u.size();
    for (std::size_t i = 0; i < n; ++i) {
        s.ut[i] += 0.5 * dt * a[i];
        s.u[i] += dt * s.ut[i];
    }
    s.u[n - 1] = 0.0;
    acceleration(e, dr, s.u, a);
    for (std::size_t i = 0; i < n; ++i) s.ut[i] += 0.5 * dt * a[i];
    s.ut[n - 1] = 0.0;
    s.t += dt;
}

}  // namespace

PhysicalState step(const PhysicalState& s, const SolverConfig& cfg, double dt) {
    PhysicalState out = s;
    std::vector<double> a(s.u.size());
    acceleration(cfg.e, cfg.grid.dr, s.u, a);
    kick_drift_kick(cfg.e, cfg.grid.dr, dt, out, a);
    for (std::size_t i = 0; i < out.u.size(); ++i)
        if (!std::isfinite(out.u[i]) || !std::isfinite(out.ut[i]))
            throw NumericalError(fmt::format("solution overflowed at r={} before the amplitude cap", i * cfg.grid.dr));
    return out;
}

PhysicalState step(const PhysicalState& s, const SolverConfig& cfg) {
    return step(s, cfg, cfg.cfl * cfg.grid.dr);
}

BlowupRun run_until_blowup(const SolverConfig& cfg) {
    validate(cfg);
    const auto& e = cfg.e;
    const double dr = cfg.grid.dr;
    const double dt_cfl = cfg.cfl * dr;

    BlowupRun run;
    Trajectory& tr = run.trajectory;
    tr.e = e;
    tr.dr = dr;

    PhysicalState s = initial_state(cfg);
    std::vector<double> a(s.u.size());
    acceleration(e, dr, s.u, a);

    auto keep_nodes = [&](double P) {
        const double r_keep = cfg.store_radius_factor * P + 8.0 * dr;
        if (!std::isfinite(r_keep) || r_keep >= cfg.grid.r_max) return s.u.size();
        return std::min(s.u.size(), static_cast<std::size_t>(std::ceil(r_keep / dr)) + 1);
    };
    auto store = [&](double P) {
        const std::size_t n = keep_nodes(P);
        PhysicalState c;
        c.t = s.t;
        c.u.assign(s.u.begin(), s.u.begin() + n);
        c.ut.assign(s.ut.begin(), s.ut.begin() + n);
        tr.states.push_back(std::move(c));
    };
    auto record = [&] {
        double m = 0;
        for (double x : s.u) m = std::max(m, std::abs(x));
        tr.center_t.push_back(s.t);
        tr.center_u.push_back(s.u[0]);
        tr.max_u.push_back(m);
        return m;
    };

    double m = record();
    store(std::min(blowup_scale(e, s.u), cfg.grid.r_max));
    double since_store = 0;
    std::size_t n = 0;
    for (; n < cfg.max_steps && s.t < cfg.t_max; ++n) {
        const double P = blowup_scale(e, s.u);
        const double dt = std::min(dt_cfl, cfg.eta * P);
        kick_drift_kick(e, dr, dt, s, a);
        for (std::size_t i = 0; i < s.u.size(); ++i)
            if (!std::isfinite(s.u[i]) || !std::isfinite(s.ut[i]))
                throw NumericalError(
                    fmt::format("solution overflowed at t={}, r={} before reaching u_cap={:g}", s.t, i * dr, cfg.u_cap));
        m = record();
        const double P_new = std::min(blowup_scale(e, s.u), cfg.grid.r_max);
        since_store += dt / P_new;
        const bool capped = m >= cfg.u_cap;
        if (since_store >= cfg.store_ds || capped) {
            store(P_new);
            since_store = 0;
        }
        if (capped) {
            run.blew_up = true;
            ++n;
            break;
        }
    }
    run.steps = n;
    run.t_final = s.t;
    if (!run.blew_up) return run;

    std::size_t imax = 0;
    for (std::size_t i = 0; i < s.u.size(); ++i)
        if (std::abs(s.u[i]) > std::abs(s.u[imax])) imax = i;
    run.center = Vec3(imax * dr, 0.0, 0.0);
    const auto& series = imax == 0 ? tr.center_u : tr.max_u;
    const BlowupFit fit = fit_blowup(tr.center_t, series, e, cfg.fit_lo, cfg.u_cap * 10.0);
    run.T_est = fit.T_est;
    run.exponent = fit.exponent;
    run.fit_r2 = fit.r2;
    return run;
}

}  // namespace blowup
