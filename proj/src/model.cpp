#include "blowup/model.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup {

Exponents make_exponents(double p, int N) {
    if (N < 2) throw InvalidParameter(fmt::format("dimension N={} must be at least 2", N));
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidParameter(fmt::format("p={} must be > 1", p));
    Exponents e;
    e.p = p;
    e.N = N;
    e.p_c = 1.0 + 4.0 / (N - 1);
    e.p_S = N >= 3 ? 1.0 + 4.0 / (N - 2) : std::numeric_limits<double>::infinity();
    if (p <= e.p_c)
        throw InvalidParameter(fmt::format("p={} is not superconformal for N={} (p_c={})", p, N, e.p_c));
    if (p >= e.p_S)
        throw InvalidParameter(fmt::format("p={} is not below the Sobolev exponent p_S={} for N={}", p, e.p_S, N));
    e.alpha = 2.0 / (p - 1.0) - (N - 1) / 2.0;
    return e;
}

double mass_coefficient(const Exponents& e) {
    return 2.0 * (e.p + 1.0) / ((e.p - 1.0) * (e.p - 1.0));
}

double scaling_power(const Exponents& e) { return 2.0 / (e.p - 1.0); }

double kappa(const Exponents& e) { return std::pow(mass_coefficient(e), 1.0 / (e.p - 1.0)); }

double unit_ball_volume(int N) {
    return std::pow(std::numbers::pi, N / 2.0) / std::tgamma(N / 2.0 + 1.0);
}

double unit_sphere_area(int N) { return N * unit_ball_volume(N); }

double constant_state_residual(const Exponents& e, double w) {
    return -mass_coefficient(e) * w + std::pow(std::abs(w), e.p - 1.0) * w;
}

RadialGrid make_radial_grid(double r_max, int nr) {
    if (nr < 8) throw InvalidParameter(fmt::format("radial grid needs at least 8 nodes, got {}", nr));
    if (!(r_max > 0)) throw InvalidParameter(fmt::format("r_max={} must be positive", r_max));
    RadialGrid g;
    g.r_max = r_max;
    g.nr = nr;
    g.dr = r_max / (nr - 1);
    g.nodes.resize(nr);
    for (int i = 0; i < nr; ++i) g.nodes[i] = i * g.dr;
    g.nodes.back() = r_max;
    return g;
}

void FunctionalSeries::push(double s_i, double v, double tail) {
    if (!s.empty() && !(s_i > s.back()))
        throw InvalidParameter(fmt::format("series '{}': s={} does not increase past {}", name, s_i, s.back()));
    s.push_back(s_i);
    value.push_back(v);
    if (!tail_bound.empty() || tail != 0.0) {
        tail_bound.resize(s.size() - 1, 0.0);
        tail_bound.push_back(tail);
    }
}

}  // namespace blowup
