#include "blowup/decay.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "blowup/errors.hpp"
#include "blowup/functionals.hpp"
#include "blowup/integration.hpp"

namespace blowup {

MonotoneReport monitor_monotone(const FunctionalSeries& series, double slack, double s_from, bool require_nonneg,
                                double nonneg_tol) {
    MonotoneReport r;
    r.name = series.name;
    const auto& v = series.value;
    if (v.empty()) return r;
    r.min_value = *std::min_element(v.begin(), v.end());
    for (double x : v) r.scale = std::max(r.scale, std::abs(x));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (series.s[i] < s_from) continue;
        const double inc = v[i + 1] - v[i];
        const double allowed = slack * std::max(std::abs(v[i]), std::abs(v[i + 1]));
        if (inc > allowed) r.violations.push_back({i, series.s[i], inc, allowed});
    }
    if (require_nonneg) {
        r.nonneg_checked = true;
        r.nonneg_ok = r.min_value >= -nonneg_tol * r.scale;
    }
    r.pass = r.violations.empty() && r.nonneg_ok;
    return r;
}

namespace {

struct Moments {
    double w2, lp1, mid, grad2, kin;
};

Moments moments(const SimilaritySnapshot& sn) {
    const double p = sn.e.p;
    Moments m;
    m.w2 = weighted_integral(sn, 0.0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    m.lp1 = weighted_integral(sn, 0.0, [&](const NodeField& f, std::size_t i) { return std::pow(std::abs(f.w[i]), p + 1.0); });
    m.mid = weighted_integral(sn, 0.0, [&](const NodeField& f, std::size_t i) {
        return std::pow(std::abs(f.w[i]), (p + 3.0) / 2.0);
    });
    m.grad2 = weighted_integral(sn, 0.0, [](const NodeField& f, std::size_t i) { return f.grad2[i]; });
    m.kin = weighted_integral(sn, 0.0, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i] + f.grad2[i]; });
    return m;
}

// out[i] = integral of f over [s_i, s_i + 1] for the samples where it fits
std::vector<double> unit_windows(const std::vector<double>& s, const std::vector<double>& f) {
    const auto parts = interval_integrals(s, f);
    std::vector<double> cum(s.size(), 0.0);
    for (std::size_t i = 0; i < parts.size(); ++i) cum[i + 1] = cum[i] + parts[i];
    std::vector<double> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double target = s[i] + 1.0;
        auto it = std::lower_bound(s.begin(), s.end(), target - 1e-9);
        if (it == s.end() || std::abs(*it - target) > 1e-9) break;
        out.push_back(cum[static_cast<std::size_t>(it - s.begin())] - cum[i]);
    }
    return out;
}

}  // namespace

std::vector<DecayQuantity> decay_quantities(const std::vector<SimilaritySnapshot>& series, int k_max) {
    if (series.size() < 8) throw CoverageError("decay suite needs a longer snapshot series");
    const Exponents e = series.front().e;
    const double al = e.alpha;
    const double r8 = 8.0 * al / (e.p + 3.0);
    std::vector<double> s;
    std::vector<Moments> m;
    std::vector<double> f0;
    for (const auto& sn : series) {
        s.push_back(sn.s);
        m.push_back(moments(sn));
        f0.push_back(E_and_F0(sn).F0);
    }
    if (!(s.front() > 0)) throw InvalidParameter("decay suite needs s > 0");
    if (s.back() - s.front() < 6.0)
        throw CoverageError(fmt::format("decay suite needs an s-window of at least 6 (have {})", s.back() - s.front()));

    auto column = [&](auto&& g) {
        std::vector<double> v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) v[i] = g(i);
        return v;
    };
    const auto ex = column([&](std::size_t i) { return std::exp(2.0 * al * s[i]); });
    const auto lp1_t = column([&](std::size_t i) { return ex[i] * m[i].lp1; });
    const auto kin_w = unit_windows(s, column([&](std::size_t i) { return m[i].kin; }));
    const auto grad_w = unit_windows(s, column([&](std::size_t i) { return m[i].grad2; }));
    const auto w2_w = unit_windows(s, column([&](std::size_t i) { return m[i].w2; }));
    const auto lp1_w = unit_windows(s, lp1_t);
    const std::size_t nw = kin_w.size();

    std::vector<DecayQuantity> out;
    auto add = [&](std::string name, std::size_t n, auto&& val, auto&& scale) {
        DecayQuantity q;
        q.value.name = name;
        q.scale.name = name + "_scale";
        for (std::size_t i = 0; i < n; ++i) {
            q.value.push(s[i], val(i));
            q.scale.push(s[i], scale(i));
        }
        out.push_back(std::move(q));
    };

    auto l2 = [&](std::size_t i) { return std::exp(r8 * s[i]) * m[i].w2; };
    add("weighted_l2", s.size(), l2, l2);
    add("potential_window", nw, [&](std::size_t i) { return lp1_w[i]; }, [&](std::size_t i) { return lp1_w[i]; });
    for (int k = 0; k <= k_max; ++k) {
        const double a = k / 18.0, b = (k + 1) / 18.0, c = (2.0 * k + 2.0) / (9.0 * (e.p + 3.0));
        add(fmt::format("gradient_window_k{}", k), nw,
            [&](std::size_t i) { return std::pow(s[i], a) * ex[i] * kin_w[i]; },
            [&](std::size_t i) { return std::pow(s[i], a) * ex[i] * w2_w[i]; });
        add(fmt::format("mid_power_k{}", k), s.size(),
            [&](std::size_t i) { return std::pow(s[i], b) * ex[i] * m[i].mid; },
            [&](std::size_t i) { return std::pow(s[i], b) * ex[i] * m[i].mid; });
        add(fmt::format("log_weighted_l2_k{}", k), s.size(),
            [&](std::size_t i) { return std::pow(s[i], c) * l2(i); },
            [&](std::size_t i) { return std::pow(s[i], c) * l2(i); });
        add(fmt::format("grad_window_k{}", k), nw,
            [&](std::size_t i) { return std::pow(s[i], b) * ex[i] * grad_w[i]; },
            [&](std::size_t i) { return std::pow(s[i], b) * ex[i] * w2_w[i]; });
        add(fmt::format("log_weighted_F0_k{}", k), s.size(),
            [&](std::size_t i) { return std::pow(s[i], b) * f0[i]; },
            [&](std::size_t i) { return std::pow(s[i], b) * ex[i] * m[i].w2; });
    }
    return out;
}

std::vector<DecayVerdict> check_decay_suite(const std::vector<DecayQuantity>& bundle, double factor,
                                            double vanish_tol, double slack) {
    std::vector<DecayVerdict> out;
    for (const auto& q : bundle) {
        const auto& s = q.value.s;
        const auto& v = q.value.value;
        DecayVerdict d;
        d.name = q.value.name;
        if (s.size() < 4) {
            out.push_back(d);
            continue;
        }
        const double s_mid = 0.5 * (s.front() + s.back());
        std::size_t i0 = 0;
        while (i0 < s.size() && s[i0] < s_mid - 1e-12) ++i0;
        d.s_start = s[i0];
        d.s_end = s.back();
        d.initial = v[i0];
        d.final = v.back();
        double vmax = 0, smax = 0;
        for (std::size_t i = i0; i < s.size(); ++i) {
            vmax = std::max(vmax, std::abs(v[i]));
            smax = std::max(smax, std::abs(q.scale.value[i]));
        }
        d.vanishing = vmax <= vanish_tol * smax;
        d.ratio = d.initial != 0.0 ? d.final / d.initial : 0.0;

        bool mono = true;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t n = 0;
        for (std::size_t i = i0; i < s.size(); ++i) {
            if (i + 1 < s.size() && v[i + 1] - v[i] > slack * std::max(std::abs(v[i]), std::abs(v[i + 1])))
                mono = false;
            if (v[i] > 0) {
                const double y = std::log(v[i]);
                sx += s[i];
                sy += y;
                sxx += s[i] * s[i];
                sxy += s[i] * y;
                ++n;
            }
        }
        if (n >= 2) d.fitted_rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        d.decreasing = mono && n >= 2 && d.fitted_rate < 0;
        d.pass = d.vanishing || (d.decreasing && d.ratio <= factor);
        out.push_back(d);
    }
    return out;
}

}  // namespace blowup
