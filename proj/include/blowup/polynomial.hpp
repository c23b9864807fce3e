#pragma once

#include <array>
#include <map>
#include <random>

#include <Eigen/Core>

#include "blowup/quadrature.hpp"

namespace blowup {

using Mat3 = Eigen::Matrix3d;

// Polynomial in y1..yN (N <= 3), exponents stored as a 3-tuple.
class Polynomial {
public:
    using Exps = std::array<int, 3>;

    Polynomial() = default;
    explicit Polynomial(double c);

    static Polynomial monomial(Exps e, double c = 1.0);
    // Re((y1 + i y2)^m)
    static Polynomial angular_mode(int m);

    void add(Exps e, double c);
    int degree() const;
    bool empty() const { return terms_.empty(); }
    const std::map<Exps, double>& terms() const { return terms_; }

    double operator()(const Vec3& y) const;
    Vec3 gradient(const Vec3& y) const;
    Mat3 hessian(const Vec3& y) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(double c) const;

private:
    std::map<Exps, double> terms_;
};

// random coefficients in [-1, 1] on every monomial of degree <= deg in N variables
Polynomial random_polynomial(int N, int deg, std::mt19937_64& rng);

}  // namespace blowup
