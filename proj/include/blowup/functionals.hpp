#pragma once

#include <vector>

#include "blowup/model.hpp"
#include "blowup/snapshot.hpp"

namespace blowup {

inline constexpr double kEps0 = 0.6;

// unweighted energy on the ball
double E0(const SimilaritySnapshot& snap);
// alpha int w ws - (alpha N / 2) int w^2, so that E = E0 + J0
double J0(const SimilaritySnapshot& snap);

struct EnergyPair {
    double E = 0;
    double F0 = 0;  // exp(2 alpha s) E
};
EnergyPair E_and_F0(const SimilaritySnapshot& snap);

double E_eps(const SimilaritySnapshot& snap, double eps);
double J_eps(const SimilaritySnapshot& snap, double eps);
double G_eps(const SimilaritySnapshot& snap, double eps);
double N_eps(const SimilaritySnapshot& snap, double eps);
double I_eps(const SimilaritySnapshot& snap, double eps);
double L_eps(const SimilaritySnapshot& snap, double eps);
double M_func(const SimilaritySnapshot& snap, double eps0 = kEps0);

// int |w|^(p+1) rho_eps / sqrt(1-|y|^2)
double singular_Lp1(const SimilaritySnapshot& snap, double eps);

// int |w|^(p+1) rho/(1-|y|^2) + int w^2 rho, rho = rho_eps0: the density inside the U family
double U_density(const SimilaritySnapshot& snap, double eps0 = kEps0);

// [int w^2 rho_eps/(1-|y|^2)] / [int |grad w|^2 (1-|y|^2) rho_eps + int w^2 rho_eps]
double hardy_ratio(const SimilaritySnapshot& snap, double eps);

FunctionalSeries F0_series(const std::vector<SimilaritySnapshot>& series);

// minimum tail length s_max - s for which truncating the tail integrals is accepted
double required_tail_length(double alpha);

// F_k(s) = s^(k/18) F0(s) + (k/18) int_s^inf tau^((k-18)/18) F0(tau) dtau,
// evaluated where s_max - s >= required_tail_length; the truncated remainder
// is estimated from F0(s_max) exp(2 alpha (tau - s_max)) and stored as tail_bound
FunctionalSeries F_family(const FunctionalSeries& f0, int k, double alpha);
FunctionalSeries F_family(const std::vector<SimilaritySnapshot>& series, int k);

struct ScriptFamily {
    FunctionalSeries main;   // s^((k-18)/18) exp(2 alpha s) M
    FunctionalSeries U;      // int_s^inf tau^((k-18)/18) exp(2 alpha tau) U_density
    FunctionalSeries value;  // main + sigma U
    double sigma = 1.0;
    double sigma_min = 0.0;  // smallest sigma making the sampled value nonincreasing
};

ScriptFamily script_family(const std::vector<SimilaritySnapshot>& series, int k, double sigma, double eps0 = kEps0);

}  // namespace blowup
