#include "blowup/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

struct Densities {
    double cone;      // int |grad w|^2 + (ws + a w + y.grad w)^2
    double boundary;  // int |grad w|^2 - (y.grad w)^2 + (ws + a w + y.grad w)^2 - |w|^(p+1)/(p+1)
    double l2, ut_l2, grad_l2;
};

Densities densities(const SimilaritySnapshot& sn) {
    const double a = scaling_power(sn.e);
    const double p = sn.e.p;
    auto ut = [a](const NodeField& f, std::size_t i) { return f.ws[i] + a * f.w[i] + f.yg[i]; };
    Densities d;
    d.cone = weighted_integral(sn, 0.0, [&](const NodeField& f, std::size_t i) {
        const double v = ut(f, i);
        return f.grad2[i] + v * v;
    });
    d.boundary = weighted_integral(sn, 0.0, [&](const NodeField& f, std::size_t i) {
        const double v = ut(f, i);
        return f.grad2[i] - f.yg[i] * f.yg[i] + v * v - std::pow(std::abs(f.w[i]), p + 1.0) / (p + 1.0);
    });
    d.l2 = weighted_integral(sn, 0.0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    d.ut_l2 = weighted_integral(sn, 0.0, [&](const NodeField& f, std::size_t i) {
        const double v = ut(f, i);
        return v * v;
    });
    d.grad_l2 = weighted_integral(sn, 0.0, [](const NodeField& f, std::size_t i) { return f.grad2[i]; });
    return d;
}

}  // namespace

TheoremReport theorem_quantities(const Trajectory& traj, const Vec3& x0, double T0, double q,
                                 std::span<const double> s_grid, std::shared_ptr<const RuleSet> rules) {
    if (q < 0) throw InvalidParameter(fmt::format("q={} must be >= 0", q));
    if (s_grid.size() < 3) throw InvalidParameter("theorem quantities need at least 3 sample times");
    const Exponents& e = traj.e;
    const double al = e.alpha;
    const double a = scaling_power(e);
    const double l2_exp = e.N - 2.0 * a - (e.p - 1.0) * e.N / (e.p + 3.0);

    // time integral over [t, (t+T0)/2] is s' in [s, s + log 2]
    auto [gx, gw] = gauss_jacobi(8, 0.0, 0.0);
    const double half = 0.5 * std::numbers::ln2;

    TheoremReport rep;
    rep.q = q;
    rep.expected_l2_exponent = 4.0 * (e.N / (e.p + 3.0) - 1.0 / (e.p - 1.0));
    rep.lower_floor = std::numeric_limits<double>::infinity();
    for (double s : s_grid) {
        const double weight = std::pow(std::abs(s), q);
        std::vector<double> sub(gx.size());
        for (std::size_t j = 0; j < gx.size(); ++j) sub[j] = s + half * (1.0 + gx[j]);
        const auto subs = trajectory_to_w(traj, x0, T0, sub, rules);
        double cone = 0;
        for (std::size_t j = 0; j < subs.size(); ++j)
            cone += half * gw[j] * std::exp(2.0 * al * sub[j]) * densities(subs[j]).cone;

        const double grid_s[1] = {s};
        const auto here = trajectory_to_w(traj, x0, T0, grid_s, rules).front();
        const Densities d = densities(here);
        TheoremSample ts;
        ts.s = s;
        ts.lambda = std::exp(-s);
        ts.cone_integral = weight * cone;
        ts.boundary_energy = weight * 0.5 * std::exp(2.0 * al * s) * d.boundary;
        ts.scaled_l2 = weight * std::exp(-s * l2_exp) * d.l2;
        ts.lower_bound = std::sqrt(d.l2) + std::sqrt(d.ut_l2) + std::sqrt(d.grad_l2);
        rep.samples.push_back(ts);
        rep.sup_cone = std::max(rep.sup_cone, std::abs(ts.cone_integral));
        rep.sup_boundary = std::max(rep.sup_boundary, std::abs(ts.boundary_energy));
        rep.sup_l2 = std::max(rep.sup_l2, ts.scaled_l2);
        rep.lower_floor = std::min(rep.lower_floor, ts.lower_bound);
    }

    // slope of log(scaled_l2 / |s|^q) against log(T0 - t) = -s over the last decade
    const double s_end = rep.samples.back().s;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    bool decreasing = true;
    const TheoremSample* prev = nullptr;
    for (const auto& ts : rep.samples) {
        if (ts.s < s_end - std::numbers::ln10 - 1e-12) continue;
        if (prev && ts.scaled_l2 > prev->scaled_l2) decreasing = false;
        prev = &ts;
        if (!(ts.scaled_l2 > 0)) continue;
        const double x = -ts.s;
        const double y = std::log(ts.scaled_l2) - q * std::log(std::abs(ts.s));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) rep.fitted_l2_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    rep.l2_decreasing = decreasing && n >= 2;

    const std::size_t mid = rep.samples.size() / 2;
    double sup_first = 0, sup_last = 0;
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        const double v = std::abs(rep.samples[i].cone_integral);
        if (i < mid)
            sup_first = std::max(sup_first, v);
        else
            sup_last = std::max(sup_last, v);
    }
    rep.cone_bounded = std::isfinite(rep.sup_cone) && sup_last <= sup_first * (1.0 + 1e-9);
    return rep;
}

}  // namespace blowup
