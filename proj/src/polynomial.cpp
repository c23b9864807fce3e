#include "blowup/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace blowup {

namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

Polynomial::Polynomial(double c) {
    if (c != 0.0) terms_[{0, 0, 0}] = c;
}

Polynomial Polynomial::monomial(Exps e, double c) {
    Polynomial q;
    q.add(e, c);
    return q;
}

Polynomial Polynomial::angular_mode(int m) {
    // Re (y1 + i y2)^m = sum_{j even} C(m,j) (-1)^(j/2) y1^(m-j) y2^j
    Polynomial q;
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
        if (j % 2 == 0) q.add({m - j, j, 0}, (j / 2 % 2 == 0 ? 1.0 : -1.0) * binom);
        binom = binom * (m - j) / (j + 1);
    }
    return q;
}

void Polynomial::add(Exps e, double c) {
    if (c == 0.0) return;
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0.0) terms_.erase(e);
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

double Polynomial::operator()(const Vec3& y) const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) acc += c * ipow(y[0], e[0]) * ipow(y[1], e[1]) * ipow(y[2], e[2]);
    return acc;
}

Vec3 Polynomial::gradient(const Vec3& y) const {
    Vec3 g = Vec3::Zero();
    for (const auto& [e, c] : terms_) {
        for (int k = 0; k < 3; ++k) {
            if (e[k] == 0) continue;
            double t = c * e[k];
            for (int j = 0; j < 3; ++j) t *= ipow(y[j], j == k ? e[j] - 1 : e[j]);
            g[k] += t;
        }
    }
    return g;
}

Mat3 Polynomial::hessian(const Vec3& y) const {
    Mat3 h = Mat3::Zero();
    for (const auto& [e, c] : terms_) {
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) {
                Exps d = e;
                double t = c;
                if (d[a] == 0) continue;
                t *= d[a]--;
                if (d[b] == 0) continue;
                t *= d[b]--;
                for (int j = 0; j < 3; ++j) t *= ipow(y[j], d[j]);
                h(a, b) += t;
                if (a != b) h(b, a) += t;
            }
    }
    return h;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add(e, c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return r;
}

Polynomial Polynomial::operator*(double c) const {
    Polynomial r;
    for (const auto& [e, v] : terms_) r.add(e, v * c);
    return r;
}

Polynomial random_polynomial(int N, int deg, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Polynomial q;
    const int n2 = N >= 2 ? deg : 0;
    const int n3 = N >= 3 ? deg : 0;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; j <= n2 && i + j <= deg; ++j)
            for (int k = 0; k <= n3 && i + j + k <= deg; ++k) q.add({i, j, k}, coef(rng));
    return q;
}

}  // namespace blowup
