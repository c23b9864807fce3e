#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "blowup/model.hpp"
#include "blowup/quadrature.hpp"

namespace blowup {

struct NodeValue {
    double w = 0;
    double ws = 0;
    Vec3 grad = Vec3::Zero();
};

using FieldSampler = std::function<NodeValue(const Vec3&)>;

// Rules for several weight exponents that share one angular layout.
struct RuleSet {
    int N = 0;
    AngularMode mode = AngularMode::Full;
    int n_radial = 0;
    int n_angular = 0;
    std::vector<BallQuadrature> rules;
    SphereRule sphere;

    const BallQuadrature& at(double beta) const;
    std::size_t index_of(double beta) const;
};

std::shared_ptr<const RuleSet> make_rule_set(int N, std::vector<double> betas, int n_radial, int n_angular,
                                             AngularMode mode = AngularMode::Full);

// every exponent the functionals and lemma checks touch for the given eps list
std::vector<double> standard_betas(const std::vector<double>& eps_list, double eps0 = 0.6);

// node data in structure-of-arrays form, with the radial/angular split
struct NodeField {
    std::vector<double> w, ws;
    std::vector<double> r2;        // |y|^2
    std::vector<double> yg;        // y . grad w
    std::vector<double> grad2;     // |grad w|^2
    std::vector<double> grad_r2;   // |grad_r w|^2
    std::vector<double> grad_th2;  // |grad_theta w|^2
    std::vector<Vec3> grad, grad_r, grad_theta;

    std::size_t size() const { return w.size(); }
};

NodeField sample_nodes(const std::vector<Vec3>& nodes, const FieldSampler& f);

struct SimilaritySnapshot {
    double s = 0;
    double T0 = 0;
    Vec3 x0 = Vec3::Zero();
    Exponents e;
    std::shared_ptr<const RuleSet> rules;
    std::vector<NodeField> fields;  // parallel to rules->rules
    NodeField boundary;             // trace on |y| = 1, nodes of rules->sphere

    const NodeField& at(double beta) const { return fields[rules->index_of(beta)]; }
    const BallQuadrature& rule(double beta) const { return rules->at(beta); }
};

SimilaritySnapshot make_snapshot(double s, const Exponents& e, std::shared_ptr<const RuleSet> rules,
                                 const FieldSampler& f);

// integral of f(field, node) against (1-|y|^2)^beta
template <class F>
double weighted_integral(const SimilaritySnapshot& snap, double beta, F&& f) {
    const NodeField& nf = snap.at(beta);
    std::vector<double> v(nf.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(nf, i);
    return integrate(snap.rule(beta), v);
}

template <class F>
double boundary_integral(const SimilaritySnapshot& snap, F&& f) {
    const NodeField& nf = snap.boundary;
    std::vector<double> v(nf.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(nf, i);
    return integrate(snap.rules->sphere, v);
}

}  // namespace blowup
