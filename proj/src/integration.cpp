#include "blowup/integration.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup {

bool is_uniform(std::span<const double> s, double rel_tol) {
    if (s.size() < 3) return true;
    const double h = s[1] - s[0];
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (std::abs((s[i + 1] - s[i]) - h) > rel_tol * std::abs(h) + 1e-13) return false;
    return true;
}

double trapezoid(std::span<const double> s, std::span<const double> f) {
    if (s.size() != f.size()) throw InvalidParameter("trapezoid: length mismatch");
    double acc = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) acc += 0.5 * (s[i + 1] - s[i]) * (f[i] + f[i + 1]);
    return acc;
}

std::vector<double> interval_integrals(std::span<const double> s, std::span<const double> f) {
    if (s.size() != f.size()) throw InvalidParameter("interval_integrals: length mismatch");
    const std::size_t n = s.size();
    std::vector<double> out(n > 0 ? n - 1 : 0);
    if (n < 4 || !is_uniform(s)) {
        for (std::size_t j = 0; j + 1 < n; ++j) out[j] = 0.5 * (s[j + 1] - s[j]) * (f[j] + f[j + 1]);
        return out;
    }
    const double h = (s[n - 1] - s[0]) / static_cast<double>(n - 1);
    out[0] = h / 24.0 * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]);
    for (std::size_t j = 1; j + 2 < n; ++j) out[j] = h / 24.0 * (-f[j - 1] + 13 * f[j] + 13 * f[j + 1] - f[j + 2]);
    out[n - 2] = h / 24.0 * (f[n - 4] - 5 * f[n - 3] + 19 * f[n - 2] + 9 * f[n - 1]);
    return out;
}

std::vector<double> tail_integrals(std::span<const double> s, std::span<const double> f) {
    const auto parts = interval_integrals(s, f);
    std::vector<double> out(s.size(), 0.0);
    for (std::size_t i = parts.size(); i-- > 0;) out[i] = out[i + 1] + parts[i];
    return out;
}

double power_exp_tail(double gamma, double b, double S) {
    if (!(b > 0) || !(gamma > -1) || !(S > 0))
        throw InvalidParameter(fmt::format("power_exp_tail needs b>0, gamma>-1, S>0 (got {}, {}, {})", b, gamma, S));
    // exp(bS) b^(-gamma-1) Gamma(gamma+1, bS)
    const double a = gamma + 1.0;
    const double x = b * S;
    return std::exp(x) * std::pow(b, -a) * boost::math::tgamma(a, x);
}

}  // namespace blowup
