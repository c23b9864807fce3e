#pragma once

#include <span>
#include <string>
#include <vector>

#include "blowup/functionals.hpp"
#include "blowup/lemmas.hpp"

namespace blowup {

// |M| / int (ws^2 + |grad w|^2 + w^2 + |w|^(p+1)) rho_eps0
double mass_bound_ratio(const SimilaritySnapshot& snap, double eps0 = kEps0);

// [int_s^{s+1} singular_Lp1] / [int_{s-2}^{s+3} int (|grad w|^2 + ws^2 + w^2 + |w|^(p+1)) rho_eps]
double singular_average_ratio(std::span<const SimilaritySnapshot> series, double eps, double s);

struct SigmaWindow {
    double sigma = 0;  // time integral of the eps0 remainder
    double ws2 = 0;    // int int ws^2 rho
    double grad2 = 0;  // int int |grad w|^2 rho
    double w2 = 0;     // int int w^2 rho
};

SigmaWindow sigma_window(std::span<const SimilaritySnapshot> series, double s0, double s1);

// smallest C1 for which the window satisfies the remainder bound (0 if it already holds with C1 = 0)
double sigma_constant(const SigmaWindow& w);

// int Sigma + (1/20) int ws^2 <= (4/5) int |grad w|^2 + C1 int w^2
IdentityReport check_sigma_bound(std::span<const SimilaritySnapshot> series, double s0, double s1, double C1,
                                 double tol = 1e-9);

// ratio <= constant, reported as an inequality
IdentityReport check_ratio_bound(std::string name, double ratio, double constant, std::string context = {});

struct Calibration {
    std::string name;
    double constant = 0;
    std::size_t samples = 0;
    double observed = 0;  // largest ratio seen while calibrating
};

// each trajectory is a uniform-in-s snapshot series
using SnapshotSuite = std::vector<std::vector<SimilaritySnapshot>>;

struct CalibrationOptions {
    double eps = 1.0;          // weight exponent for the Hardy and singular-average ratios
    double margin = 0.05;      // constant = (1 + margin) * observed
    double window_step = 1.0;  // spacing of the time windows
};

// hardy, singular_average, mass_bound, sigma_C1 in that order
std::vector<Calibration> calibrate(const SnapshotSuite& suite, const CalibrationOptions& opt = {});

// every ratio of the suite checked against the matching constant
std::vector<IdentityReport> check_calibrated(const SnapshotSuite& suite, const std::vector<Calibration>& constants,
                                             const CalibrationOptions& opt = {});

}  // namespace blowup
