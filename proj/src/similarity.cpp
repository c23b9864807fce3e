#include "blowup/similarity.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

// index with even reflection through r = 0
double at_reflected(const std::vector<double>& v, long i) { return v[static_cast<std::size_t>(i < 0 ? -i : i)]; }

}  // namespace

RadialPoint interpolate(const RadialProfile& prof, double r) {
    const long n = static_cast<long>(prof.u.size());
    const double x = r / prof.dr;
    long i = static_cast<long>(std::floor(x));
    if (i < 0 || i + 2 >= n)
        throw CoverageError(fmt::format("radius {} is outside the stored profile (r <= {})", r, (n - 3) * prof.dr));
    const double th = x - i;
    // Lagrange basis on nodes -1, 0, 1, 2 (relative to i) and derivatives
    const double l0 = -th * (th - 1) * (th - 2) / 6.0;
    const double l1 = (th + 1) * (th - 1) * (th - 2) / 2.0;
    const double l2 = -(th + 1) * th * (th - 2) / 2.0;
    const double l3 = (th + 1) * th * (th - 1) / 6.0;
    const double d0 = -(3 * th * th - 6 * th + 2) / 6.0;
    const double d1 = (3 * th * th - 4 * th - 1) / 2.0;
    const double d2 = -(3 * th * th - 2 * th - 2) / 2.0;
    const double d3 = (3 * th * th - 1) / 6.0;
    RadialPoint p;
    const double um = at_reflected(prof.u, i - 1), u0 = prof.u[i], u1 = prof.u[i + 1], u2 = prof.u[i + 2];
    const double vm = at_reflected(prof.ut, i - 1), v0 = prof.ut[i], v1 = prof.ut[i + 1], v2 = prof.ut[i + 2];
    p.u = l0 * um + l1 * u0 + l2 * u1 + l3 * u2;
    p.ur = (d0 * um + d1 * u0 + d2 * u1 + d3 * u2) / prof.dr;
    p.ut = l0 * vm + l1 * v0 + l2 * v1 + l3 * v2;
    return p;
}

RadialProfile profile_at(const Trajectory& traj, double t, double r_needed) {
    const auto& st = traj.states;
    if (st.empty()) throw CoverageError("trajectory has no stored states");
    if (t < st.front().t || t > st.back().t)
        throw CoverageError(fmt::format("t={} outside stored range [{}, {}]", t, st.front().t, st.back().t));
    const double dr = traj.dr;
    const std::size_t need = static_cast<std::size_t>(std::ceil(r_needed / dr)) + 3;

    auto it = std::upper_bound(st.begin(), st.end(), t, [](double v, const PhysicalState& s) { return v < s.t; });
    std::size_t k1 = static_cast<std::size_t>(it - st.begin());
    if (k1 == st.size()) k1 = st.size() - 1;
    const std::size_t k0 = k1 == 0 ? 0 : k1 - 1;
    const PhysicalState& A = st[k0];
    const PhysicalState& B = st[k1];

    RadialProfile prof;
    prof.t = t;
    prof.dr = dr;
    if (t == A.t || k0 == k1) {
        if (A.u.size() < need)
            throw CoverageError(fmt::format("ball of radius {} exits the stored grid at t={}", r_needed, t));
        prof.u.assign(A.u.begin(), A.u.begin() + need);
        prof.ut.assign(A.ut.begin(), A.ut.begin() + need);
        return prof;
    }
    if (std::min(A.u.size(), B.u.size()) < need + 1)
        throw CoverageError(fmt::format("ball of radius {} exits the stored grid at t={}", r_needed, t));

    const double h = B.t - A.t;
    const double th = (t - A.t) / h;
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    prof.u.resize(need);
    prof.ut.resize(need);
    for (std::size_t i = 0; i < need; ++i) {
        const double aA = acceleration_at(traj.e, dr, A.u, i);
        const double aB = acceleration_at(traj.e, dr, B.u, i);
        prof.u[i] = h00 * A.u[i] + h10 * h * A.ut[i] + h01 * B.u[i] + h11 * h * B.ut[i];
        prof.ut[i] = h00 * A.ut[i] + h10 * h * aA + h01 * B.ut[i] + h11 * h * aB;
    }
    return prof;
}

SimilaritySnapshot to_similarity(const RadialProfile& prof, const Exponents& e, const Vec3& x0, double T0,
                                 std::shared_ptr<const RuleSet> rules) {
    const double lam = T0 - prof.t;
    if (!(lam > 0)) throw InvalidParameter(fmt::format("state time t={} is not before T0={}", prof.t, T0));
    const double reach = x0.norm() + lam;
    if (reach > (static_cast<double>(prof.u.size()) - 3) * prof.dr)
        throw CoverageError(fmt::format("ball image of radius {} around |x0|={} exits the grid (r <= {})", lam,
                                        x0.norm(), (prof.u.size() - 3) * prof.dr));
    const double a = scaling_power(e);
    const double sa = std::pow(lam, a);
    const double sa1 = sa * lam;
    FieldSampler f = [&](const Vec3& y) {
        const Vec3 x = x0 + lam * y;
        const double rho = x.norm();
        const RadialPoint pt = interpolate(prof, rho);
        const Vec3 gx = rho > 0 ? Vec3(pt.ur / rho * x) : Vec3::Zero();
        NodeValue v;
        v.w = sa * pt.u;
        v.grad = sa1 * gx;
        v.ws = -a * v.w + sa1 * (pt.ut - y.dot(gx));
        return v;
    };
    SimilaritySnapshot snap = make_snapshot(-std::log(lam), e, std::move(rules), f);
    snap.T0 = T0;
    snap.x0 = x0;
    return snap;
}

SimilaritySnapshot to_similarity(const PhysicalState& state, double dr, const Exponents& e, const Vec3& x0,
                                 double T0, std::shared_ptr<const RuleSet> rules) {
    if (state.t >= T0) throw InvalidParameter(fmt::format("state time t={} is not before T0={}", state.t, T0));
    RadialProfile prof{state.t, dr, state.u, state.ut};
    return to_similarity(prof, e, x0, T0, std::move(rules));
}

std::vector<SimilaritySnapshot> trajectory_to_w(const Trajectory& traj, const Vec3& x0, double T0,
                                                std::span<const double> s_grid,
                                                std::shared_ptr<const RuleSet> rules) {
    std::vector<SimilaritySnapshot> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        const double lam = std::exp(-s);
        const double t = T0 - lam;
        if (traj.states.empty() || t < traj.states.front().t || t > traj.states.back().t)
            throw CoverageError(fmt::format("s={} (t={}) is not covered by the stored trajectory", s, t));
        const RadialProfile prof = profile_at(traj, t, x0.norm() + lam);
        out.push_back(to_similarity(prof, traj.e, x0, T0, rules));
        out.back().s = s;
    }
    return out;
}

double shifted_blowup_time(double T0, double delta0, const Vec3& x, const Vec3& x0) {
    return T0 - delta0 * (x - x0).norm();
}

std::vector<double> uniform_s_grid(double s0, double s1, double ds) {
    if (!(ds > 0) || !(s1 >= s0)) throw InvalidParameter("uniform_s_grid needs ds > 0 and s1 >= s0");
    const auto n = static_cast<std::size_t>(std::floor((s1 - s0) / ds + 1e-9));
    std::vector<double> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) g[i] = s0 + static_cast<double>(i) * ds;
    return g;
}

}  // namespace blowup
