#pragma once

#include <random>

#include "blowup/polynomial.hpp"
#include "blowup/snapshot.hpp"

namespace blowup {

// w = (1-|y|^2)^a q(y) Re((y1+iy2)^m), with closed-form derivatives.
// ws is an independent polynomial (zero by default).
class TestField {
public:
    TestField(int N, double a, Polynomial q, int m = 0, Polynomial ws = {});

    int N() const { return N_; }
    double a() const { return a_; }
    const Polynomial& velocity() const { return ws_; }

    double value(const Vec3& y) const;
    Vec3 gradient(const Vec3& y) const;
    Mat3 hessian(const Vec3& y) const;
    double laplacian(const Vec3& y) const;

    // div(rho_eps grad w - rho_eps (y.grad w) y) / rho_eps
    double divergence_ratio(const Vec3& y, double eps) const;

    NodeValue sample(const Vec3& y) const;
    FieldSampler sampler() const;

private:
    int N_;
    double a_;
    Polynomial q_;
    Polynomial ws_;
};

struct RandomFieldOptions {
    int max_degree = 4;
    int max_a = 2;  // integer boundary exponents 0..max_a
    int max_mode = 3;
};

TestField random_test_field(int N, std::mt19937_64& rng, const RandomFieldOptions& opt = {});

}  // namespace blowup
