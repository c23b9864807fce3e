#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "blowup/snapshot.hpp"
#include "blowup/test_field.hpp"

namespace blowup {

struct IdentityReport {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double abs_residual = 0;
    double rel_residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::string context;
};

IdentityReport make_report(std::string name, double lhs, double rhs, double tolerance, std::string context = {});

// identities for the weighted divergence of grad w - (y.grad w) y on static fields
IdentityReport check_pohozaev_A(const TestField& field, double eps, const RuleSet& rules);
IdentityReport check_pohozaev_E(const TestField& field, double eps, const RuleSet& rules);

enum class Lemma { E_eps, J_eps, N_eps, I_eps, L_eps, M, F0, F1, J0 };

std::string lemma_name(Lemma l);
Lemma parse_lemma(const std::string& name);
std::vector<Lemma> all_lemmas();

// functional side: the quantity whose s-derivative the lemma describes (F0 for F1)
double lemma_value(Lemma l, const SimilaritySnapshot& snap, double eps);
// integrand side: the claimed derivative, assembled from weighted integrals only
double lemma_rate(Lemma l, const SimilaritySnapshot& snap, double eps);

// the remainder term in the derivative of the eps0 = 3/5 functional
double sigma_term(const SimilaritySnapshot& snap);

struct LemmaPaths {
    std::vector<double> s, value, rate;
};

LemmaPaths lemma_paths(Lemma l, std::span<const SimilaritySnapshot> series, double eps, double s0, double s1);

// LHS: change of the functional across the window; RHS: trapezoid of the rate
IdentityReport check_lemma_paths(Lemma l, const LemmaPaths& paths, double tolerance, std::string context = {});

IdentityReport check_derivative_lemma(Lemma l, std::span<const SimilaritySnapshot> series, double eps, double s0,
                                      double s1, double tolerance);

// Static version: the field and its velocity polynomial are pushed along the
// similarity equation for an instant and the functional is differentiated by
// a 5-point finite difference. Checks one lemma pointwise in s.
IdentityReport instantaneous_lemma_check(Lemma l, const TestField& field, const Exponents& e, double eps, double s,
                                         std::shared_ptr<const RuleSet> rules, double h = 1e-3);

// sampler for the field advanced by h along the similarity equation
FieldSampler flow_sampler(const TestField& field, const Exponents& e, double h);

}  // namespace blowup
