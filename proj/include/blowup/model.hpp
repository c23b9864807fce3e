#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace blowup {

struct Exponents {
    double p = 0;
    int N = 0;
    double p_c = 0;
    double p_S = std::numeric_limits<double>::infinity();
    double alpha = 0;
};

Exponents make_exponents(double p, int N);

// positive constant solution of the similarity equation
double kappa(const Exponents& e);

// 2(p+1)/(p-1)^2, the linear coefficient in the similarity equation
double mass_coefficient(const Exponents& e);

// 2/(p-1)
double scaling_power(const Exponents& e);

double unit_ball_volume(int N);
double unit_sphere_area(int N);

// similarity equation evaluated on a field that is constant in y and s
double constant_state_residual(const Exponents& e, double w);

struct RadialGrid {
    double r_max = 0;
    int nr = 0;
    double dr = 0;
    std::vector<double> nodes;
};

RadialGrid make_radial_grid(double r_max, int nr);

struct PhysicalState {
    double t = 0;
    std::vector<double> u;
    std::vector<double> ut;
};

struct FunctionalSeries {
    std::string name;
    std::vector<double> s;
    std::vector<double> value;
    std::vector<double> tail_bound;  // empty unless the functional has a tail integral
    double s_max = std::numeric_limits<double>::quiet_NaN();

    std::size_t size() const { return s.size(); }
    void push(double s_i, double v, double tail = 0.0);
};

}  // namespace blowup
