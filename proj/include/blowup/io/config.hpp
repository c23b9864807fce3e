#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/solver.hpp"

namespace blowup::io {

// a bad config file: line is 0 when the problem is not tied to a line
struct ConfigError : Error {
    ConfigError(const std::string& field, int line, const std::string& what);
    std::string field;
    int line = 0;
    std::string detail;  // the message without the location
};

struct SimilaritySettings {
    std::optional<std::array<double, 3>> x0;  // unset: the detected blow-up point
    std::optional<double> T0;                 // unset: the fitted blow-up time
    double delta0 = 0.5;                      // slope used to shift T0 away from the blow-up point
    double s_start = 0.5;
    double s_end = 16.5;
    double ds = 0.025;
    int n_radial = 32;
    int n_angular = 8;
    std::string angular = "auto";  // auto, radial or full
};

struct FunctionalSettings {
    std::vector<std::string> names;  // empty: every functional
    std::vector<double> eps = {0.6, 1.0};
    int k_max = 6;
    std::vector<double> sigma = {1.0};
    double q = 1.0;
};

struct VerifySettings {
    double transient_s = 1.0;   // monotonicity is only required after this s
    double lemma_window = 1.0;  // length of each lemma window
    double lemma_rel_tol = 2e-2;
    double lemma_abs_tol = 1e-3;  // relative to the larger of the functional and int w^2 over the window
    double slack = 1e-6;
    double nonneg_tol = 1e-8;
    double decay_factor = 0.1;
    double vanish_tol = 1e-10;
    int identity_fields = 50;
    int flow_fields = 1;  // of those, how many also get the instantaneous lemma checks
    std::vector<double> identity_eps = {0.6, 1.0, 1.1};
    double identity_tol = 1e-8;
};

struct RunConfig {
    SolverConfig solver;
    SimilaritySettings similarity;
    FunctionalSettings functionals;
    VerifySettings verify;
    std::string output_dir;
    std::uint64_t seed = 0;
};

RunConfig default_config();
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// every field, sectioned, with shortest round-trip numbers; parse_config reads it back unchanged
std::string dump_config(const RunConfig& cfg);

void validate(const RunConfig& cfg);

}  // namespace blowup::io
