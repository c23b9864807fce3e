#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "blowup/errors.hpp"
#include "blowup/functionals.hpp"
#include "blowup/similarity.hpp"

using namespace blowup;

namespace {

// int_B |y|^(2k) (1-|y|^2)^beta
double moment(int N, int k, double beta) {
    return unit_sphere_area(N) * boost::math::beta(k + N / 2.0, beta + 1.0) / 2.0;
}

SimilaritySnapshot constant_snapshot(const Exponents& e, double s, std::shared_ptr<const RuleSet> rules) {
    const double k = kappa(e);
    return make_snapshot(s, e, rules, [k](const Vec3&) { return NodeValue{k, 0.0, Vec3::Zero()}; });
}

}  // namespace

TEST_CASE("functionals on the constant state match closed forms") {
    for (auto [p, N] : {std::pair{4.0, 3}, {6.0, 2}}) {
        const auto e = make_exponents(p, N);
        const double k = kappa(e), c = mass_coefficient(e), al = e.alpha, B = unit_ball_volume(N);
        const double kp1 = std::pow(k, p + 1);
        auto rules = make_rule_set(N, standard_betas({0.6, 1.0, 1.1}), 16, 8);
        const double s = 0.7;
        const auto snap = constant_snapshot(e, s, rules);
        const double pot = c / 2 * k * k - kp1 / (p + 1);

        CHECK(E0(snap) == doctest::Approx(B * pot).epsilon(1e-12));
        CHECK(J0(snap) == doctest::Approx(-al * N / 2 * k * k * B).epsilon(1e-12));
        const auto ef = E_and_F0(snap);
        CHECK(ef.E == doctest::Approx(B * (pot - al * N / 2 * k * k)).epsilon(1e-12));
        CHECK(ef.F0 == doctest::Approx(std::exp(2 * al * s) * ef.E).epsilon(1e-12));
        for (double eps : {0.6, 1.0, 1.1}) {
            const double V = moment(N, 0, eps), Vh = moment(N, 0, eps - 0.5);
            CHECK(E_eps(snap, eps) == doctest::Approx(V * pot).epsilon(1e-11));
            CHECK(J_eps(snap, eps) == doctest::Approx(-(N / 2.0 + al) * k * k * V).epsilon(1e-11));
            CHECK(std::abs(G_eps(snap, eps)) < 1e-11 * k * k * V);
            CHECK(N_eps(snap, eps) == 0.0);
            CHECK(I_eps(snap, eps) == doctest::Approx(-N / 2.0 * k * k * Vh).epsilon(1e-11));
            CHECK(L_eps(snap, eps) == doctest::Approx(-(0.5 + eps) * N / 2.0 * k * k * Vh).epsilon(1e-11));
            CHECK(hardy_ratio(snap, eps) == doctest::Approx(moment(N, 0, eps - 1) / V).epsilon(1e-11));
        }
        const double kk = 2 / (p - 1) + 0.4;
        const double M_ref = moment(N, 0, 0.6) * pot + kk * (N / 2.0 + al) * k * k * moment(N, 0, 0.6) +
                             1.2 * kk * k * k * moment(N, 1, -0.4) + kk * al * k * k * moment(N, 0, 0.6);
        CHECK(M_func(snap) == doctest::Approx(M_ref).epsilon(1e-11));
        CHECK(U_density(snap) == doctest::Approx(kp1 * moment(N, 0, -0.4) + k * k * moment(N, 0, 0.6)).epsilon(1e-11));
    }
}

TEST_CASE("energy of a radial field against one-dimensional quadrature") {
    // w = (1 - r^2) + 0.3 r^2, ws = 0.2 r, N = 3
    const auto e = make_exponents(4.0, 3);
    auto rules = make_rule_set(3, standard_betas({1.0}), 24, 8);
    auto w = [](double r) { return 1 - 0.7 * r * r; };
    auto wr = [](double r) { return -1.4 * r; };
    auto ws = [](double r) { return 0.2 * r * r; };
    const auto snap = make_snapshot(0.0, e, rules, [&](const Vec3& y) {
        const double r = y.norm();
        return NodeValue{w(r), ws(r), -1.4 * y};
    });
    const double c = mass_coefficient(e), p = e.p;
    auto density = [&](double r) {
        return 0.5 * ws(r) * ws(r) + 0.5 * wr(r) * wr(r) * (1 - r * r) + c / 2 * w(r) * w(r) -
               std::pow(std::abs(w(r)), p + 1) / (p + 1);
    };
    auto radial = [&](auto f, double eps) {
        return 4 * std::numbers::pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                                          [&](double r) { return f(r) * std::pow(1 - r * r, eps) * r * r; }, 0.0, 1.0,
                                          10, 1e-14);
    };
    CHECK(E0(snap) == doctest::Approx(radial(density, 0.0)).epsilon(1e-11));
    CHECK(E_eps(snap, 1.0) == doctest::Approx(radial(density, 1.0)).epsilon(1e-11));
    const double al = e.alpha;
    auto jd = [&](double r) { return -w(r) * ws(r) - (1.5 + al) * w(r) * w(r); };
    CHECK(J_eps(snap, 1.0) == doctest::Approx(radial(jd, 1.0)).epsilon(1e-11));
    auto nd = [&](double r) { return r * wr(r) * ws(r) + r * r * wr(r) * wr(r); };
    CHECK(N_eps(snap, 1.0) == doctest::Approx(radial(nd, 1.0)).epsilon(1e-11));
}

TEST_CASE("F family of an exponential F0 against adaptive quadrature") {
    const double al = -1.0 / 3.0, A = 2.5;
    FunctionalSeries f0;
    f0.name = "F0";
    for (double s : uniform_s_grid(0.5, 12.0, 0.01)) f0.push(s, A * std::exp(2 * al * s));
    for (int k : {1, 3, 6}) {
        const auto fk = F_family(f0, k, al);
        REQUIRE(fk.size() > 0);
        CHECK(fk.s.back() <= 12.0 - required_tail_length(al) + 1e-9);
        const double gam = (k - 18.0) / 18.0;
        boost::math::quadrature::exp_sinh<double> es;
        for (std::size_t i = 0; i < fk.size(); i += 97) {
            const double s = fk.s[i];
            const double tail = es.integrate([&](double u) { return std::pow(s + u, gam) * A * std::exp(2 * al * (s + u)); },
                                             0.0, std::numeric_limits<double>::infinity());
            const double ref = std::pow(s, k / 18.0) * A * std::exp(2 * al * s) + k / 18.0 * tail;
            CHECK(fk.value[i] == doctest::Approx(ref).epsilon(1e-8));
        }
        // monotone: the derivative is s^(k/18) F0' < 0
        for (std::size_t i = 1; i < fk.size(); ++i) CHECK(fk.value[i] < fk.value[i - 1]);
    }
    FunctionalSeries short_series;
    for (double s : uniform_s_grid(0.5, 3.0, 0.1)) short_series.push(s, 1.0);
    CHECK_THROWS_AS(F_family(short_series, 1, al), CoverageError);
}

TEST_CASE("similarity variables of the ODE branch are the constant state") {
    const auto e = make_exponents(4.0, 3);
    auto rules = make_rule_set(3, standard_betas({1.0}), 12, 6);
    const double T = 1.0, t = 0.9, dr = 0.01;
    RadialProfile prof;
    prof.t = t;
    prof.dr = dr;
    const auto [u, ut] = [&] {
        const double lam = T - t;
        return std::pair{kappa(e) * std::pow(lam, -2.0 / 3.0), 2.0 / 3.0 * kappa(e) * std::pow(lam, -5.0 / 3.0)};
    }();
    prof.u.assign(40, u);
    prof.ut.assign(40, ut);
    const auto snap = to_similarity(prof, e, Vec3::Zero(), T, rules);
    CHECK(snap.s == doctest::Approx(-std::log(T - t)));
    for (const auto& f : snap.fields)
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(f.w[i] == doctest::Approx(kappa(e)).epsilon(1e-12));
            CHECK(std::abs(f.ws[i]) < 1e-10);
            CHECK(f.grad2[i] < 1e-20);
        }
}

TEST_CASE("profile interpolation") {
    RadialProfile prof;
    prof.dr = 0.1;
    for (int i = 0; i < 30; ++i) {
        const double r = i * 0.1;
        prof.u.push_back(1 + r * r);
        prof.ut.push_back(r * r * r);
    }
    for (double r : {0.0, 0.03, 0.47, 1.234}) {
        const auto pt = interpolate(prof, r);
        CHECK(pt.u == doctest::Approx(1 + r * r).epsilon(1e-13));
        CHECK(pt.ur == doctest::Approx(2 * r).epsilon(1e-12).scale(1));
    }
    // odd data is only reproduced away from the reflected stencil
    CHECK(interpolate(prof, 1.234).ut == doctest::Approx(std::pow(1.234, 3)).epsilon(1e-12));
    CHECK_THROWS_AS(interpolate(prof, 2.95), CoverageError);
}

TEST_CASE("shifted blow-up time") {
    CHECK(shifted_blowup_time(1.0, 0.5, Vec3(0.2, 0, 0), Vec3::Zero()) == doctest::Approx(0.9));
}
