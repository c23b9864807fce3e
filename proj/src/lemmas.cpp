#include "blowup/lemmas.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "blowup/errors.hpp"
#include "blowup/functionals.hpp"
#include "blowup/integration.hpp"

namespace blowup {

IdentityReport make_report(std::string name, double lhs, double rhs, double tolerance, std::string context) {
    IdentityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-14});
    r.tolerance = tolerance;
    r.pass = std::isfinite(r.rel_residual) && r.rel_residual <= tolerance;
    r.context = std::move(context);
    return r;
}

namespace {

double sum_over(const BallQuadrature& rule, const NodeField& f, auto&& g) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(f, i);
    return integrate(rule, v);
}

}  // namespace

IdentityReport check_pohozaev_A(const TestField& field, double eps, const RuleSet& rules) {
    const int N = field.N();
    const auto& r_eps = rules.at(eps);
    const auto& r_m1 = rules.at(eps - 1.0);
    const auto sampler = field.sampler();
    const NodeField f = sample_nodes(r_eps.nodes, sampler);
    const NodeField fm = sample_nodes(r_m1.nodes, sampler);

    std::vector<double> lhs_v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) lhs_v[i] = f.yg[i] * field.divergence_ratio(r_eps.nodes[i], eps);
    const double lhs = integrate(r_eps, lhs_v);

    const double rhs = -eps * sum_over(r_m1, fm, [](const NodeField& g, std::size_t i) { return g.grad_th2[i] * g.r2[i]; })
                       - eps * sum_over(r_eps, f, [](const NodeField& g, std::size_t i) { return g.yg[i] * g.yg[i]; })
                       + 0.5 * N * sum_over(r_eps, f, [](const NodeField& g, std::size_t i) { return g.grad2[i] - g.yg[i] * g.yg[i]; })
                       - sum_over(r_eps, f, [](const NodeField& g, std::size_t i) { return g.grad2[i]; });
    return make_report("pohozaev_A", lhs, rhs, 1e-8, fmt::format("N={} eps={} a={}", N, eps, field.a()));
}

IdentityReport check_pohozaev_E(const TestField& field, double eps, const RuleSet& rules) {
    const int N = field.N();
    const auto& r_h = rules.at(eps - 0.5);
    const auto& r_p = rules.at(eps + 0.5);
    const auto sampler = field.sampler();
    const NodeField f = sample_nodes(r_h.nodes, sampler);
    const NodeField fp = sample_nodes(r_p.nodes, sampler);

    std::vector<double> lhs_v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) lhs_v[i] = -field.divergence_ratio(r_h.nodes[i], eps) * f.w[i];
    const double lhs = integrate(r_h, lhs_v);

    const double rhs = sum_over(r_h, f, [](const NodeField& g, std::size_t i) { return g.grad_th2[i]; })
                       + sum_over(r_p, fp, [](const NodeField& g, std::size_t i) { return g.grad_r2[i]; })
                       + sum_over(r_h, f, [](const NodeField& g, std::size_t i) { return g.w[i] * g.yg[i]; });
    return make_report("pohozaev_E", lhs, rhs, 1e-8, fmt::format("N={} eps={} a={}", N, eps, field.a()));
}

std::string lemma_name(Lemma l) {
    switch (l) {
        case Lemma::E_eps: return "dE_eps";
        case Lemma::J_eps: return "dJ_eps";
        case Lemma::N_eps: return "dN_eps";
        case Lemma::I_eps: return "dI_eps";
        case Lemma::L_eps: return "dL_eps";
        case Lemma::M: return "dM";
        case Lemma::F0: return "dF0";
        case Lemma::F1: return "dF1";
        case Lemma::J0: return "dJ0";
    }
    return "unknown";
}

std::vector<Lemma> all_lemmas() {
    return {Lemma::E_eps, Lemma::J_eps, Lemma::N_eps, Lemma::I_eps, Lemma::L_eps,
            Lemma::M,     Lemma::F0,    Lemma::F1,    Lemma::J0};
}

Lemma parse_lemma(const std::string& name) {
    for (Lemma l : all_lemmas())
        if (lemma_name(l) == name) return l;
    throw InvalidParameter(fmt::format("unknown lemma '{}'", name));
}

double lemma_value(Lemma l, const SimilaritySnapshot& snap, double eps) {
    switch (l) {
        case Lemma::E_eps: return E_eps(snap, eps);
        case Lemma::J_eps: return J_eps(snap, eps);
        case Lemma::N_eps: return N_eps(snap, eps);
        case Lemma::I_eps: return I_eps(snap, eps);
        case Lemma::L_eps: return L_eps(snap, eps);
        case Lemma::M: return M_func(snap, kEps0);
        case Lemma::F0:
        case Lemma::F1: return E_and_F0(snap).F0;
        case Lemma::J0: return J0(snap);
    }
    return 0;
}

// ---- integrand side -------------------------------------------------------
// Everything below reads node data directly; it does not call the functionals.

namespace {

struct Rates {
    const SimilaritySnapshot& sn;
    double p, al, c;
    int N;

    explicit Rates(const SimilaritySnapshot& s)
        : sn(s), p(s.e.p), al(s.e.alpha), c(mass_coefficient(s.e)), N(s.e.N) {}

    double I(double beta, auto&& g) const { return weighted_integral(sn, beta, g); }
    double Bd(auto&& g) const { return boundary_integral(sn, g); }
    double lp1(double w) const { return std::pow(std::abs(w), p + 1.0); }

    // pointwise combinations reused below
    double n_val(double e) const {
        return I(e, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.ws[i] + f.yg[i] * f.yg[i]; });
    }
    double i_val(double e) const {
        return I(e - 0.5, [&](const NodeField& f, std::size_t i) {
            return -f.w[i] * f.ws[i] - 2.0 * f.w[i] * f.yg[i] - 0.5 * N * f.w[i] * f.w[i];
        });
    }

    double dE(double e) const {
        return -2.0 * e * I(e - 1.0, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i] * f.r2[i]; })
               - 2.0 * al * I(e, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i]; })
               + (2.0 * e - 2.0 * al) * I(e, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.yg[i]; });
    }

    double dJ(double e) const {
        const double g = I(e, [&](const NodeField& f, std::size_t i) {
            const double d = f.ws[i] + f.yg[i];
            return f.grad2[i] - lp1(f.w[i]) - d * d + c * f.w[i] * f.w[i];
        });
        return g - 2.0 * N * I(e, [](const NodeField& f, std::size_t i) { return f.w[i] * f.ws[i]; })
               + 4.0 * e * I(e - 1.0, [](const NodeField& f, std::size_t i) { return f.r2[i] * f.w[i] * f.ws[i]; })
               + (2.0 * al - 2.0 * e) * I(e, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.w[i]; });
    }

    double dN(double e) const {
        return -2.0 * al * n_val(e)
               - e * I(e - 1.0, [](const NodeField& f, std::size_t i) { return f.grad_th2[i] * f.r2[i]; })
               + 2.0 * e / (p + 1.0) * I(e - 1.0, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               - 0.5 * N * I(e, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i]; })
               + e * I(e - 1.0, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i] * f.r2[i]; })
               + 0.5 * N * I(e, [](const NodeField& f, std::size_t i) { return f.grad2[i] - f.yg[i] * f.yg[i]; })
               - I(e, [](const NodeField& f, std::size_t i) { return f.grad2[i]; })
               - c * I(e, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.w[i]; })
               - (N + 2.0 * e) / (p + 1.0) * I(e, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               - N * I(e, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.ws[i]; })
               + e * I(e, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.yg[i]; });
    }

    double dI(double e) const {
        const double h = e - 0.5;
        return -2.0 * al * i_val(e) - I(h, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               + I(h, [](const NodeField& f, std::size_t i) { return f.grad_th2[i]; })
               - I(h, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i]; })
               + (1.0 - 2.0 * e - 2.0 * al) * I(h, [](const NodeField& f, std::size_t i) { return f.w[i] * f.yg[i]; })
               + (c - al * N) * I(h, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; })
               - 2.0 * I(h, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.yg[i]; })
               + I(e + 0.5, [](const NodeField& f, std::size_t i) { return f.grad_r2[i]; });
    }

    double dL(double e) const {
        const double h = 0.5 + e;  // weight of the first component
        const double m = e - 0.5;
        const double l_val = n_val(h) + h * i_val(e);
        return -2.0 * al * l_val
               - (1.0 + 2.0 * e) * (p - 1.0) / (2.0 * (p + 1.0)) * I(m, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               + 0.5 * N * I(h, [](const NodeField& f, std::size_t i) { return f.grad2[i] - f.yg[i] * f.yg[i]; })
               - (0.5 - e) * I(h, [](const NodeField& f, std::size_t i) { return f.grad2[i]; })
               - c * I(h, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.w[i]; })
               - (N + 1.0 + 2.0 * e) / (p + 1.0) * I(h, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               - N * I(h, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.ws[i]; })
               + h * I(h, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.yg[i]; })
               - ((N + 1.0) / 2.0 + e) * I(h, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i]; })
               + (1.0 - 2.0 * e - 2.0 * al) * h * I(m, [](const NodeField& f, std::size_t i) { return f.w[i] * f.yg[i]; })
               + (c - al * N) * h * I(m, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; })
               - (1.0 + 2.0 * e) * I(m, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.yg[i]; });
    }

    static constexpr double e0 = 0.6;

    double k() const { return 2.0 / (p - 1.0) + 0.4; }

    double m_val() const {
        const double kk = k();
        const double energy = I(e0, [&](const NodeField& f, std::size_t i) {
            return 0.5 * f.ws[i] * f.ws[i] + 0.5 * (f.grad2[i] - f.yg[i] * f.yg[i]) + 0.5 * c * f.w[i] * f.w[i]
                   - lp1(f.w[i]) / (p + 1.0);
        });
        const double jj = I(e0, [&](const NodeField& f, std::size_t i) {
            return -f.w[i] * f.ws[i] - (0.5 * N + al) * f.w[i] * f.w[i];
        });
        return energy + n_val(e0) - kk * jj
               + 1.2 * kk * I(e0 - 1.0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i] * f.r2[i]; })
               + kk * al * I(e0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
    }

    double sigma() const {
        const double kk = k();
        const double sm = e0 - 1.0;
        const double ws2_r2 = I(sm, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i] * f.r2[i]; });
        const double yg2 = I(e0, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.yg[i]; });
        const double ws_yg = I(e0, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.yg[i]; });
        const double ws2 = I(e0, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i]; });
        const double yg_w = I(e0, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.w[i]; });
        const double w2 = I(e0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; });
        const double w_ws = I(e0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.ws[i]; });
        const double w2_r2 = I(sm, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i] * f.r2[i]; });

        const double s1 = -0.6 * ws2_r2 + 0.6 * yg2 + 1.2 * ws_yg;
        const double s2 = -0.1 * ws2 - 0.1 * yg2 - 0.2 * ws_yg;
        const double s3 = -(c + kk * (2.0 * al - 1.2)) * yg_w + (c * (al - kk) + al * kk * (N + 4.0 * al)) * w2
                          + 2.0 * kk * (N + 2.0 * al) * w_ws;
        const double s4 = 2.4 * al * kk * w2_r2;
        return s1 + s2 + s3 + s4;
    }

    double dM() const {
        const double sm = e0 - 1.0;
        return -2.0 * al * m_val()
               - 0.6 * I(sm, [](const NodeField& f, std::size_t i) { return f.grad_th2[i] * f.r2[i]; })
               - 0.9 * I(e0, [](const NodeField& f, std::size_t i) { return f.grad2[i]; })
               + 6.0 / (5.0 * p + 5.0) * I(sm, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               + (2.0 * p + 1.0) / (5.0 * p + 5.0) * I(e0, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               + sigma();
    }

    double dF0() const {
        const double ex = std::exp(2.0 * al * sn.s);
        const double bd = Bd([&](const NodeField& f, std::size_t i) {
            const double d = f.ws[i] + al * f.w[i];
            return d * d;
        });
        return -ex * bd + al * (p - 1.0) / (p + 1.0) * ex * I(0.0, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); });
    }

    double dJ0() const {
        return al * I(0.0, [](const NodeField& f, std::size_t i) { return f.ws[i] * f.ws[i]; })
               - al * I(0.0, [](const NodeField& f, std::size_t i) { return f.grad2[i] - f.yg[i] * f.yg[i]; })
               + al * I(0.0, [&](const NodeField& f, std::size_t i) { return lp1(f.w[i]); })
               - al * al * Bd([](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; })
               + (al * al * N - al * c) * I(0.0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.w[i]; })
               - 2.0 * al * Bd([](const NodeField& f, std::size_t i) { return f.w[i] * f.ws[i]; })
               + 2.0 * al * I(0.0, [](const NodeField& f, std::size_t i) { return f.yg[i] * f.ws[i]; })
               - al * ((p + 3.0) / (p - 1.0) - N) * I(0.0, [](const NodeField& f, std::size_t i) { return f.w[i] * f.ws[i]; });
    }
};

}  // namespace

double sigma_term(const SimilaritySnapshot& snap) { return Rates(snap).sigma(); }

double lemma_rate(Lemma l, const SimilaritySnapshot& snap, double eps) {
    const Rates r(snap);
    switch (l) {
        case Lemma::E_eps: return r.dE(eps);
        case Lemma::J_eps: return r.dJ(eps);
        case Lemma::N_eps: return r.dN(eps);
        case Lemma::I_eps: return r.dI(eps);
        case Lemma::L_eps: return r.dL(eps);
        case Lemma::M: return r.dM();
        case Lemma::F0: return r.dF0();
        case Lemma::F1: return std::pow(snap.s, 1.0 / 18.0) * r.dF0();
        case Lemma::J0: return r.dJ0();
    }
    return 0;
}

LemmaPaths lemma_paths(Lemma l, std::span<const SimilaritySnapshot> series, double eps, double s0, double s1) {
    constexpr double tol = 1e-9;
    LemmaPaths p;
    for (const auto& sn : series) {
        if (sn.s < s0 - tol || sn.s > s1 + tol) continue;
        p.s.push_back(sn.s);
        p.value.push_back(lemma_value(l, sn, eps));
        p.rate.push_back(lemma_rate(l, sn, eps));
    }
    if (p.s.size() < 2 || std::abs(p.s.front() - s0) > tol || std::abs(p.s.back() - s1) > tol)
        throw CoverageError(fmt::format("window [{}, {}] is not covered by the snapshot series", s0, s1));
    if (l == Lemma::F1 && !(p.s.front() > 0)) throw InvalidParameter("dF1 needs s > 0");
    return p;
}

IdentityReport check_lemma_paths(Lemma l, const LemmaPaths& paths, double tolerance, std::string context) {
    const auto& s = paths.s;
    double lhs = paths.value.back() - paths.value.front();
    if (l == Lemma::F1) {
        std::vector<double> g(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) g[i] = std::pow(s[i], -17.0 / 18.0) * paths.value[i];
        lhs = std::pow(s.back(), 1.0 / 18.0) * paths.value.back() - std::pow(s.front(), 1.0 / 18.0) * paths.value.front()
              - trapezoid(s, g) / 18.0;
    }
    const double rhs = trapezoid(s, paths.rate);
    if (context.empty()) context = fmt::format("s in [{}, {}], {} samples", s.front(), s.back(), s.size());
    return make_report(lemma_name(l), lhs, rhs, tolerance, std::move(context));
}

IdentityReport check_derivative_lemma(Lemma l, std::span<const SimilaritySnapshot> series, double eps, double s0,
                                      double s1, double tolerance) {
    return check_lemma_paths(l, lemma_paths(l, series, eps, s0, s1), tolerance,
                             fmt::format("eps={} s in [{}, {}]", eps, s0, s1));
}

FieldSampler flow_sampler(const TestField& field, const Exponents& e, double h) {
    const double c = mass_coefficient(e);
    const double damp = (e.p + 3.0) / (e.p - 1.0);
    const Polynomial v = field.velocity();
    return [=](const Vec3& y) {
        const double w = field.value(y);
        const Vec3 g = field.gradient(y);
        const double vv = v.empty() ? 0.0 : v(y);
        const Vec3 gv = v.empty() ? Vec3::Zero() : v.gradient(y);
        // ws_s from the similarity equation with weight exponent alpha
        const double acc = field.divergence_ratio(y, e.alpha) - c * w + std::pow(std::abs(w), e.p - 1.0) * w
                           - damp * vv - 2.0 * y.dot(gv);
        NodeValue out;
        out.w = w + h * vv;
        out.ws = vv + h * acc;
        out.grad = g + h * gv;
        return out;
    };
}

IdentityReport instantaneous_lemma_check(Lemma l, const TestField& field, const Exponents& e, double eps, double s,
                                         std::shared_ptr<const RuleSet> rules, double h) {
    auto value_at = [&](double dh) {
        SimilaritySnapshot sn = make_snapshot(s + dh, e, rules, flow_sampler(field, e, dh));
        const double v = lemma_value(l, sn, eps);
        return l == Lemma::F1 ? std::pow(s + dh, 1.0 / 18.0) * v : v;
    };
    const double d = (value_at(-2 * h) - 8 * value_at(-h) + 8 * value_at(h) - value_at(2 * h)) / (12 * h);
    const SimilaritySnapshot base = make_snapshot(s, e, rules, flow_sampler(field, e, 0.0));
    double lhs = d;
    if (l == Lemma::F1) lhs -= std::pow(s, -17.0 / 18.0) / 18.0 * lemma_value(l, base, eps);
    const double rhs = lemma_rate(l, base, eps);
    return make_report(lemma_name(l), lhs, rhs, 1e-8, fmt::format("instantaneous, N={} eps={} s={}", e.N, eps, s));
}

}  // namespace blowup
