#include "blowup/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "blowup/errors.hpp"
#include "blowup/integration.hpp"

namespace blowup {

double mass_bound_ratio(const SimilaritySnapshot& snap, double eps0) {
    const double p = snap.e.p;
    const double den = weighted_integral(snap, eps0, [&](const NodeField& f, std::size_t i) {
        return f.ws[i] * f.ws[i] + f.grad2[i] + f.w[i] * f.w[i] + std::pow(std::abs(f.w[i]), p + 1.0);
    });
    if (den == 0.0) return 0.0;
    return std::abs(M_func(snap, eps0)) / den;
}

namespace {

// samples of f over [s0, s1], integrated with the trapezoid rule
template <class F>
double window_integral(std::span<const SimilaritySnapshot> series, double s0, double s1, F&& f) {
    constexpr double tol = 1e-9;
    std::vector<double> s, v;
    for (const auto& sn : series)
        if (sn.s >= s0 - tol && sn.s <= s1 + tol) {
            s.push_back(sn.s);
            v.push_back(f(sn));
        }
    if (s.size() < 2 || std::abs(s.front() - s0) > tol || std::abs(s.back() - s1) > tol)
        throw CoverageError(fmt::format("window [{}, {}] is not covered by the snapshot series", s0, s1));
    return trapezoid(s, v);
}

}  // namespace

double singular_average_ratio(std::span<const SimilaritySnapshot> series, double eps, double s) {
    const double num = window_integral(series, s, s + 1.0, [&](const SimilaritySnapshot& sn) { return singular_Lp1(sn, eps); });
    const double den = window_integral(series, s - 2.0, s + 3.0, [&](const SimilaritySnapshot& sn) {
        const double p = sn.e.p;
        return weighted_integral(sn, eps, [&](const NodeField& f, std::size_t i) {
            return f.grad2[i] + f.ws[i] * f.ws[i] + f.w[i] * f.w[i] + std::pow(std::abs(f.w[i]), p + 1.0);
        });
    });
    if (den == 0.0) return 0.0;
    return num / den;
}

SigmaWindow sigma_window(std::span<const SimilaritySnapshot> series, double s0, double s1) {
    SigmaWindow w;
    w.sigma = window_integral(series, s0, s1, [](const SimilaritySnapshot& sn) { return sigma_term(sn); });
    w.ws2 = window_integral(series, s0, s1, [](const SimilaritySnapshot& sn) {
        return weighted_integral(sn, kEps0, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i]; });
    });
    w.grad2 = window_integral(series, s0, s1, [](const SimilaritySnapshot& sn) {
        return weighted_integral(sn, kEps0, [](const NodeField& f, std::size_t i) { return f.grad2[i]; });
    });
    w.w2 = window_integral(series, s0, s1, [](const SimilaritySnapshot& sn) {
        return weighted_integral(sn, kEps0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    });
    return w;
}

double sigma_constant(const SigmaWindow& w) {
    const double excess = w.sigma + w.ws2 / 20.0 - 0.8 * w.grad2;
    if (excess <= 0) return 0.0;
    if (w.w2 == 0.0) return std::numeric_limits<double>::infinity();
    return excess / w.w2;
}

IdentityReport check_sigma_bound(std::span<const SimilaritySnapshot> series, double s0, double s1, double C1,
                                 double tol) {
    const SigmaWindow w = sigma_window(series, s0, s1);
    const double lhs = w.sigma + w.ws2 / 20.0;
    const double rhs = 0.8 * w.grad2 + C1 * w.w2;
    IdentityReport r = make_report("sigma_bound", lhs, rhs, tol, fmt::format("C1={} s in [{}, {}]", C1, s0, s1));
    r.pass = lhs <= rhs + tol * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return r;
}

IdentityReport check_ratio_bound(std::string name, double ratio, double constant, std::string context) {
    IdentityReport r = make_report(std::move(name), ratio, constant, 0.0, std::move(context));
    r.pass = ratio <= constant;
    return r;
}

namespace {

// start points s of windows [s + lo, s + hi] that fit inside the series
std::vector<double> window_starts(std::span<const SimilaritySnapshot> series, double lo, double hi, double step) {
    std::vector<double> out;
    if (series.size() < 2) return out;
    const double first = series.front().s, last = series.back().s;
    const double ds = series[1].s - first;
    for (double s = first - lo; s + hi <= last + 1e-9; s += step) {
        // snap onto the sample grid so the window ends are exact nodes
        const double k = std::round((s - first) / ds);
        out.push_back(series[static_cast<std::size_t>(k)].s);
    }
    return out;
}

template <class Visit>
void each_ratio(const SnapshotSuite& suite, const CalibrationOptions& opt, Visit&& visit) {
    for (std::size_t t = 0; t < suite.size(); ++t) {
        const auto& series = suite[t];
        for (const auto& sn : series) {
            visit(0, hardy_ratio(sn, opt.eps), fmt::format("trajectory {} s={}", t, sn.s));
            visit(2, mass_bound_ratio(sn), fmt::format("trajectory {} s={}", t, sn.s));
        }
        for (double s : window_starts(series, -2.0, 3.0, opt.window_step))
            visit(1, singular_average_ratio(series, opt.eps, s), fmt::format("trajectory {} s={}", t, s));
        for (double s : window_starts(series, 0.0, 1.0, opt.window_step))
            visit(3, sigma_constant(sigma_window(series, s, s + 1.0)), fmt::format("trajectory {} s={}", t, s));
    }
}

const char* const kCalibrationNames[] = {"hardy", "singular_average", "mass_bound", "sigma_C1"};

}  // namespace

std::vector<Calibration> calibrate(const SnapshotSuite& suite, const CalibrationOptions& opt) {
    std::vector<Calibration> out;
    for (const char* name : kCalibrationNames) out.push_back({name, 0.0, 0, 0.0});
    each_ratio(suite, opt, [&](int which, double ratio, const std::string&) {
        auto& c = out[static_cast<std::size_t>(which)];
        c.observed = std::max(c.observed, ratio);
        ++c.samples;
    });
    for (auto& c : out) {
        if (c.samples == 0) throw CoverageError(fmt::format("no samples for the {} calibration", c.name));
        c.constant = (1.0 + opt.margin) * c.observed;
    }
    return out;
}

std::vector<IdentityReport> check_calibrated(const SnapshotSuite& suite, const std::vector<Calibration>& constants,
                                             const CalibrationOptions& opt) {
    std::vector<IdentityReport> worst(4);
    std::vector<bool> seen(4, false);
    each_ratio(suite, opt, [&](int which, double ratio, const std::string& ctx) {
        const auto i = static_cast<std::size_t>(which);
        auto it = std::find_if(constants.begin(), constants.end(),
                               [&](const Calibration& c) { return c.name == kCalibrationNames[i]; });
        if (it == constants.end()) throw InvalidParameter(fmt::format("missing constant {}", kCalibrationNames[i]));
        if (!seen[i] || ratio > worst[i].lhs) worst[i] = check_ratio_bound(it->name, ratio, it->constant, ctx);
        seen[i] = true;
    });
    std::vector<IdentityReport> out;
    for (std::size_t i = 0; i < 4; ++i)
        if (seen[i]) out.push_back(worst[i]);
    return out;
}

}  // namespace blowup
