#pragma once

#include <limits>
#include <string>
#include <vector>

#include "blowup/model.hpp"
#include "blowup/snapshot.hpp"

namespace blowup {

struct Violation {
    std::size_t index = 0;
    double s = 0;
    double increase = 0;
    double allowed = 0;
};

struct MonotoneReport {
    std::string name;
    std::vector<Violation> violations;
    bool nonneg_checked = false;
    bool nonneg_ok = true;
    double min_value = 0;
    double scale = 0;  // max |value| over the checked range
    bool pass = true;
};

// flags steps with v[i+1] - v[i] > slack * max(|v[i]|, |v[i+1]|) for s >= s_from;
// optionally also v >= -nonneg_tol * scale over the whole series
MonotoneReport monitor_monotone(const FunctionalSeries& series, double slack = 1e-6,
                                double s_from = -std::numeric_limits<double>::infinity(),
                                bool require_nonneg = false, double nonneg_tol = 1e-8);

// A quantity expected to go to zero, with a companion "scale" series built with the
// same prefactors from int w^2: gradient-type quantities that vanish identically on
// the constant branch are recognised against it instead of being fitted.
struct DecayQuantity {
    FunctionalSeries value;
    FunctionalSeries scale;
};

std::vector<DecayQuantity> decay_quantities(const std::vector<SimilaritySnapshot>& series, int k_max = 2);

struct DecayVerdict {
    std::string name;
    double s_start = 0, s_end = 0;
    double initial = 0, final = 0, ratio = 0;
    double fitted_rate = 0;  // slope of log value over the final half-window
    bool decreasing = false;
    bool vanishing = false;
    bool pass = false;
};

std::vector<DecayVerdict> check_decay_suite(const std::vector<DecayQuantity>& bundle, double factor = 0.1,
                                            double vanish_tol = 1e-10, double slack = 1e-6);

}  // namespace blowup
