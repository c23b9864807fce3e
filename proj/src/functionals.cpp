#include "blowup/functionals.hpp"

#include <cmath>

#include <fmt/format.h>

#include "blowup/errors.hpp"
#include "blowup/integration.hpp"

namespace blowup {

namespace {

double lp1(const Exponents& e, double w) { return std::pow(std::abs(w), e.p + 1.0); }

double energy_density(const Exponents& e, const NodeField& f, std::size_t i) {
    const double c = mass_coefficient(e);
    return 0.5 * f.ws[i] * f.ws[i] + 0.5 * (f.grad2[i] - f.yg[i] * f.yg[i]) + 0.5 * c * f.w[i] * f.w[i]
           - lp1(e, f.w[i]) / (e.p + 1.0);
}

}  // namespace

double E0(const SimilaritySnapshot& snap) {
    return weighted_integral(snap, 0.0, [&](const NodeField& f, std::size_t i) { return energy_density(snap.e, f, i); });
}

double J0(const SimilaritySnapshot& snap) {
    const double al = snap.e.alpha;
    const int N = snap.e.N;
    return weighted_integral(snap, 0.0, [&](const NodeField& f, std::size_t i) {
        return al * f.w[i] * f.ws[i] - 0.5 * al * N * f.w[i] * f.w[i];
    });
}

EnergyPair E_and_F0(const SimilaritySnapshot& snap) {
    EnergyPair r;
    r.E = E0(snap) + J0(snap);
    r.F0 = std::exp(2.0 * snap.e.alpha * snap.s) * r.E;
    return r;
}

double E_eps(const SimilaritySnapshot& snap, double eps) {
    return weighted_integral(snap, eps, [&](const NodeField& f, std::size_t i) { return energy_density(snap.e, f, i); });
}

double J_eps(const SimilaritySnapshot& snap, double eps) {
    const double k = snap.e.N / 2.0 + snap.e.alpha;
    return weighted_integral(snap, eps, [&](const NodeField& f, std::size_t i) {
        return -f.w[i] * f.ws[i] - k * f.w[i] * f.w[i];
    });
}

double G_eps(const SimilaritySnapshot& snap, double eps) {
    const double c = mass_coefficient(snap.e);
    return weighted_integral(snap, eps, [&](const NodeField& f, std::size_t i) {
        const double d = f.ws[i] + f.yg[i];
        return f.grad2[i] - lp1(snap.e, f.w[i]) - d * d + c * f.w[i] * f.w[i];
    });
}

double N_eps(const SimilaritySnapshot& snap, double eps) {
    return weighted_integral(snap, eps, [](const NodeField& f, std::size_t i) {
        return f.yg[i] * f.ws[i] + f.yg[i] * f.yg[i];
    });
}

double I_eps(const SimilaritySnapshot& snap, double eps) {
    const double half_n = snap.e.N / 2.0;
    return weighted_integral(snap, eps - 0.5, [&](const NodeField& f, std::size_t i) {
        return -f.w[i] * (f.ws[i] + 2.0 * f.yg[i]) - half_n * f.w[i] * f.w[i];
    });
}

double L_eps(const SimilaritySnapshot& snap, double eps) {
    return N_eps(snap, 0.5 + eps) + (0.5 + eps) * I_eps(snap, eps);
}

double M_func(const SimilaritySnapshot& snap, double eps0) {
    const double al = snap.e.alpha;
    const double k = 2.0 / (snap.e.p - 1.0) + 0.4;
    const double weighted_r2 = weighted_integral(snap, eps0 - 1.0, [](const NodeField& f, std::size_t i) {
        return f.w[i] * f.w[i] * f.r2[i];
    });
    const double plain = weighted_integral(snap, eps0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    return E_eps(snap, eps0) + N_eps(snap, eps0) - k * J_eps(snap, eps0) + 1.2 * k * weighted_r2 + k * al * plain;
}

double singular_Lp1(const SimilaritySnapshot& snap, double eps) {
    return weighted_integral(snap, eps - 0.5, [&](const NodeField& f, std::size_t i) { return lp1(snap.e, f.w[i]); });
}

double U_density(const SimilaritySnapshot& snap, double eps0) {
    const double a = weighted_integral(snap, eps0 - 1.0, [&](const NodeField& f, std::size_t i) { return lp1(snap.e, f.w[i]); });
    const double b = weighted_integral(snap, eps0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    return a + b;
}

double hardy_ratio(const SimilaritySnapshot& snap, double eps) {
    const double lhs = weighted_integral(snap, eps - 1.0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    const double rhs = weighted_integral(snap, eps + 1.0, [](const NodeField& f, std::size_t i) { return f.grad2[i]; })
                       + weighted_integral(snap, eps, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    if (rhs == 0.0) return 0.0;
    return lhs / rhs;
}

FunctionalSeries F0_series(const std::vector<SimilaritySnapshot>& series) {
    FunctionalSeries out;
    out.name = "F0";
    for (const auto& sn : series) out.push(sn.s, E_and_F0(sn).F0);
    return out;
}

double required_tail_length(double alpha) { return 5.0 / (2.0 * std::abs(alpha)); }

namespace {

void check_positive_s(const std::vector<double>& s) {
    if (s.empty()) throw CoverageError("empty series");
    if (!(s.front() > 0)) throw InvalidParameter(fmt::format("the F family needs s > 0 (series starts at s={})", s.front()));
}

// number of leading samples whose tail reaches s_max - s >= L
std::size_t covered_count(const std::vector<double>& s, double L, const char* what) {
    std::size_t n = 0;
    while (n < s.size() && s.back() - s[n] >= L - 1e-12) ++n;
    if (n == 0)
        throw CoverageError(fmt::format("{}: series must extend to s_max >= {} (have s_max = {})", what, s.front() + L,
                                        s.back()));
    return n;
}

}  // namespace

FunctionalSeries F_family(const FunctionalSeries& f0, int k, double alpha) {
    if (k < 0) throw InvalidParameter("F family index k must be >= 0");
    if (!(alpha < 0)) throw InvalidParameter("F family needs alpha < 0");
    FunctionalSeries out;
    out.name = fmt::format("F{}", k);
    if (k == 0) {
        out.s = f0.s;
        out.value = f0.value;
        return out;
    }
    check_positive_s(f0.s);
    const std::size_t n = covered_count(f0.s, required_tail_length(alpha), "F family");
    const double gam = (k - 18.0) / 18.0;
    const double S = f0.s.back();
    out.s_max = S;
    std::vector<double> g(f0.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::pow(f0.s[i], gam) * f0.value[i];
    const auto tails = tail_integrals(f0.s, g);
    const double tail = f0.value.back() * power_exp_tail(gam, -2.0 * alpha, S);
    const double c = k / 18.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::pow(f0.s[i], k / 18.0) * f0.value[i] + c * (tails[i] + tail);
        out.push(f0.s[i], v, c * tail);
    }
    return out;
}

FunctionalSeries F_family(const std::vector<SimilaritySnapshot>& series, int k) {
    if (series.empty()) throw CoverageError("empty snapshot series");
    return F_family(F0_series(series), k, series.front().e.alpha);
}

ScriptFamily script_family(const std::vector<SimilaritySnapshot>& series, int k, double sigma, double eps0) {
    if (series.empty()) throw CoverageError("empty snapshot series");
    if (k < 1) throw InvalidParameter("script family index k must be >= 1");
    const double al = series.front().e.alpha;
    std::vector<double> s, m, u;
    for (const auto& sn : series) {
        s.push_back(sn.s);
        m.push_back(M_func(sn, eps0));
        u.push_back(U_density(sn, eps0));
    }
    check_positive_s(s);
    const std::size_t n = covered_count(s, required_tail_length(al), "script family");
    const double gam = (k - 18.0) / 18.0;
    std::vector<double> g(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) g[i] = std::pow(s[i], gam) * std::exp(2.0 * al * s[i]) * u[i];
    const auto tails = tail_integrals(s, g);
    const double tail = g.back() * power_exp_tail(gam, -2.0 * al, s.back());

    ScriptFamily r;
    r.sigma = sigma;
    r.main.name = fmt::format("script_main{}", k);
    r.U.name = fmt::format("U{}", k);
    r.value.name = fmt::format("script_F{}", k);
    for (auto* fs : {&r.main, &r.U, &r.value}) fs->s_max = s.back();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::pow(s[i], gam) * std::exp(2.0 * al * s[i]) * m[i];
        const double uu = tails[i] + tail;
        r.main.push(s[i], a);
        r.U.push(s[i], uu, tail);
        r.value.push(s[i], a + sigma * uu, sigma * tail);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dA = r.main.value[i + 1] - r.main.value[i];
        const double dU = r.U.value[i + 1] - r.U.value[i];
        if (dU < 0) r.sigma_min = std::max(r.sigma_min, dA / -dU);
    }
    return r;
}

}  // namespace blowup
