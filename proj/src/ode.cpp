#include "blowup/ode.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup {

std::pair<double, double> ode_exact(const Exponents& e, double T, double t) {
    if (!(t < T)) throw InvalidParameter(fmt::format("ode_exact needs t < T (t={}, T={})", t, T));
    const double a = scaling_power(e);
    const double k = kappa(e);
    const double lam = T - t;
    return {k * std::pow(lam, -a), a * k * std::pow(lam, -a - 1.0)};
}

OdeTrajectory ode_integrate(double u0, double u1, const Exponents& e, double dt, double u_cap,
                            const OdeOptions& opt) {
    if (!(dt > 0)) throw InvalidParameter(fmt::format("dt={} must be positive", dt));
    if (!(u_cap > std::max(std::abs(u0), 1.0)))
        throw InvalidParameter(fmt::format("u_cap={} must exceed max(|u0|, 1)", u_cap));

    const double p = e.p;
    const double k = kappa(e);
    auto acc = [p](double u) { return std::pow(std::abs(u), p - 1.0) * u; };

    OdeTrajectory tr;
    tr.p = p;
    tr.T = std::numeric_limits<double>::quiet_NaN();
    double t = 0, u = u0, v = u1;
    tr.samples.push_back({t, u, v});
    for (std::size_t n = 0; n < opt.max_steps && t < opt.t_max; ++n) {
        double h = dt;
        if (u != 0.0) h = std::min(h, opt.eta * std::pow(k / std::abs(u), (p - 1.0) / 2.0));
        const double k1u = v, k1v = acc(u);
        const double k2u = v + 0.5 * h * k1v, k2v = acc(u + 0.5 * h * k1u);
        const double k3u = v + 0.5 * h * k2v, k3v = acc(u + 0.5 * h * k2u);
        const double k4u = v + h * k3v, k4v = acc(u + h * k3u);
        u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        t += h;
        if (!std::isfinite(u) || !std::isfinite(v))
            throw NumericalError(fmt::format("ODE state overflowed at t={} before reaching the cap", t));
        tr.samples.push_back({t, u, v});
        if (std::abs(u) >= u_cap) {
            tr.blew_up = true;
            break;
        }
    }
    if (tr.blew_up) {
        try {
            tr.T = fit_blowup(tr, e).T_est;
        } catch (const FitFailed&) {
            tr.T = t;
        }
    }
    return tr;
}

BlowupFit fit_blowup(std::span<const double> t, std::span<const double> u, const Exponents&, double lo,
                     double hi) {
    if (t.size() != u.size()) throw InvalidParameter("fit_blowup: t and u differ in length");
    std::vector<double> ts, ls;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double a = std::abs(u[i]);
        if (a >= lo && a <= hi) {
            ts.push_back(t[i]);
            ls.push_back(std::log(a));
        }
    }
    if (ts.size() < 8)
        throw FitFailed(fmt::format("only {} samples with |u| in [{:g}, {:g}]; need 8", ts.size(), lo, hi));
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1]) || !(ls[i] > ls[i - 1]))
            throw FitFailed(fmt::format("amplitude tail is not monotone near t={}", ts[i]));

    const double t_last = ts.back();
    const double span = t_last - ts.front();
    if (!(span > 0)) throw FitFailed("fit window has zero length");

    struct Lin {
        double c, b, rss, tss;
    };
    auto linfit = [&](double T) {
        const std::size_t n = ts.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = std::log(T - ts[i]);
            sx += x;
            sy += ls[i];
            sxx += x * x;
            sxy += x * ls[i];
        }
        const double mx = sx / n, my = sy / n;
        const double vxx = sxx / n - mx * mx;
        const double b = (sxy / n - mx * my) / vxx;
        const double c = my - b * mx;
        double rss = 0, tss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ls[i] - c - b * std::log(T - ts[i]);
            rss += r * r;
            tss += (ls[i] - my) * (ls[i] - my);
        }
        return Lin{c, b, rss, tss};
    };

    // search T = t_last + exp(z); the gap is at least a few ulps of t_last
    const double z_lo = std::log(std::max(8.0 * std::numeric_limits<double>::epsilon() * std::abs(t_last), 1e-300));
    const double z_hi = std::log(4.0 * span);
    auto obj = [&](double z) { return linfit(t_last + std::exp(z)).rss; };
    // coarse scan first: the RSS is not unimodal over the full range
    const int n_scan = 200;
    double best_z = z_lo, best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n_scan; ++i) {
        const double z = z_lo + (z_hi - z_lo) * i / n_scan;
        const double v = obj(z);
        if (v < best) {
            best = v;
            best_z = z;
        }
    }
    const double dz = (z_hi - z_lo) / n_scan;
    const auto res = boost::math::tools::brent_find_minima(obj, std::max(z_lo, best_z - dz),
                                                           std::min(z_hi, best_z + dz), 52);
    const double T = t_last + std::exp(res.first);
    const Lin l = linfit(T);
    BlowupFit f;
    f.T_est = T;
    f.exponent = l.b;
    f.log_amplitude = l.c;
    f.r2 = l.tss > 0 ? 1.0 - l.rss / l.tss : 0.0;
    f.n_used = ts.size();
    return f;
}

BlowupFit fit_blowup(const OdeTrajectory& traj, const Exponents& e, double lo, double hi) {
    std::vector<double> t, u;
    for (const auto& s : traj.samples) {
        t.push_back(s.t);
        u.push_back(s.u);
    }
    return fit_blowup(t, u, e, lo, hi);
}

}  // namespace blowup
