#include "blowup/snapshot.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup {

namespace {
constexpr double kBetaMatch = 1e-12;
}

std::size_t RuleSet::index_of(double beta) const {
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (std::abs(rules[i].beta - beta) < kBetaMatch) return i;
    throw InvalidParameter(fmt::format("no quadrature rule built for weight exponent {}", beta));
}

const BallQuadrature& RuleSet::at(double beta) const { return rules[index_of(beta)]; }

std::shared_ptr<const RuleSet> make_rule_set(int N, std::vector<double> betas, int n_radial, int n_angular,
                                             AngularMode mode) {
    std::sort(betas.begin(), betas.end());
    betas.erase(std::unique(betas.begin(), betas.end(),
                            [](double a, double b) { return std::abs(a - b) < kBetaMatch; }),
                betas.end());
    auto rs = std::make_shared<RuleSet>();
    rs->N = N;
    rs->mode = mode;
    rs->n_radial = n_radial;
    rs->n_angular = n_angular;
    for (double b : betas) rs->rules.push_back(build_rule(N, b, n_radial, n_angular, mode));
    if (rs->rules.empty()) throw InvalidParameter("rule set needs at least one weight exponent");
    rs->sphere = sphere_rule(rs->rules.front());
    return rs;
}

std::vector<double> standard_betas(const std::vector<double>& eps_list, double eps0) {
    std::vector<double> b{0.0, eps0 - 1.0, eps0};
    for (double eps : eps_list) {
        if (!(eps > 0)) throw InvalidParameter(fmt::format("eps={} must be positive", eps));
        for (double d : {-1.0, -0.5, 0.0, 0.5, 1.0}) b.push_back(eps + d);
    }
    return b;
}

NodeField sample_nodes(const std::vector<Vec3>& nodes, const FieldSampler& f) {
    NodeField nf;
    const std::size_t n = nodes.size();
    for (auto* v : {&nf.w, &nf.ws, &nf.r2, &nf.yg, &nf.grad2, &nf.grad_r2, &nf.grad_th2}) v->resize(n);
    nf.grad.resize(n);
    nf.grad_r.resize(n);
    nf.grad_theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& y = nodes[i];
        const NodeValue v = f(y);
        const GradSplit g = grad_decompose(y, v.grad);
        nf.w[i] = v.w;
        nf.ws[i] = v.ws;
        nf.r2[i] = y.squaredNorm();
        nf.yg[i] = y.dot(v.grad);
        nf.grad[i] = v.grad;
        nf.grad_r[i] = g.radial;
        nf.grad_theta[i] = g.angular;
        nf.grad2[i] = v.grad.squaredNorm();
        nf.grad_r2[i] = g.radial.squaredNorm();
        nf.grad_th2[i] = g.angular.squaredNorm();
    }
    return nf;
}

SimilaritySnapshot make_snapshot(double s, const Exponents& e, std::shared_ptr<const RuleSet> rules,
                                 const FieldSampler& f) {
    SimilaritySnapshot snap;
    snap.s = s;
    snap.e = e;
    snap.rules = std::move(rules);
    snap.fields.reserve(snap.rules->rules.size());
    for (const auto& r : snap.rules->rules) snap.fields.push_back(sample_nodes(r.nodes, f));
    snap.boundary = sample_nodes(snap.rules->sphere.nodes, f);
    return snap;
}

}  // namespace blowup
