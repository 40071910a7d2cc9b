#pragma once

#include <string>
#include <vector>

namespace plcap {

// Increasing weight g : R+ -> R+ with g(0) = 0, used by the integrability
// bounds through the Laplace-Stieltjes functional I_delta(g).
struct GrowthFunction {
    enum class Kind { power, expm1, table };

    Kind kind = Kind::power;
    double p = 1.0;      // g(t) = t^p
    double alpha = 1.0;  // g(t) = e^{alpha t} - 1
    // piecewise-linear table, extended past the last knot with its final slope
    std::vector<double> knots_t, knots_g;

    static GrowthFunction power(double p);
    static GrowthFunction exp_minus_one(double alpha);
    static GrowthFunction table(std::vector<double> t, std::vector<double> g);

    double eval(double t) const;
    bool check_monotone(int grid_points = 257, double t_max = 50.0) const;
    std::string label() const;
};

struct IntegralValue {
    double value = 0.0;
    bool divergent = false;
};

// I_delta(g) = int_0^inf e^{-delta t} dg(t). Closed forms:
//   g = t^p            -> Gamma(p+1) / delta^p
//   g = e^{alpha t}-1  -> alpha/(delta-alpha) for alpha < delta, else divergent
//   table              -> exact segment sums
IntegralValue stieltjes_I(const GrowthFunction& g, double delta);

// Same functional through the integration-by-parts identity
// I_delta(g) = delta * int_0^inf g(t) e^{-delta t} dt, by adaptive quadrature
// plus an analytic tail. Used as a cross-check of the closed forms.
IntegralValue stieltjes_I_quadrature(const GrowthFunction& g, double delta);

}  // namespace plcap
