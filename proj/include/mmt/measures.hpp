#ifndef MMT_MEASURES_HPP
#define MMT_MEASURES_HPP

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mmt/harmonics.hpp"
#include "mmt/polyalg.hpp"

namespace mmt::measures {

using harmonics::Point;

/// Radial weight function w(r) on [a,b], dsigma = w(r) dr.
/// Registry names: "lebesgue" (w = 1), "power" (w = r^p), "table"
/// (piecewise-linear interpolation of sample points), "custom" (arbitrary
/// callable, not serializable).
struct RadialDensity {
  std::string name = "lebesgue";
  double a = 0.0, b = 1.0;
  double exponent = 0.0;                          // for "power"
  std::vector<std::pair<double, double>> table;   // for "table"
  std::function<double(double)> custom;           // for "custom"

  double operator()(double r) const;
};

struct RadialAtoms {
  std::vector<std::pair<double, double>> atoms;  // (r >= 0, weight)
};

/// Finite measure on a subinterval of [0, R].
using RadialMeasure = std::variant<RadialAtoms, RadialDensity>;

struct Discrete {
  std::vector<std::pair<Point, double>> atoms;
};

/// sigma (x) uniform dtheta: integrates f as int int f(r theta) dsigma dtheta.
struct RadialProduct {
  RadialMeasure radial;
};

/// sigma placed on the positive first coordinate axis (line measure).
struct RadialTimesDirac {
  RadialMeasure radial;
};

/// d = 2 density (w0(r) + w1(r) cos v) r dr dv in polar coordinates.
struct PolarDensity {
  RadialDensity w0, w1;
  bool assert_hankel_positive = false;  // validates |w1| <= w0 on a grid
};

struct Measure {
  int d = 2;
  double R = 1.0;
  std::variant<Discrete, RadialProduct, RadialTimesDirac, PolarDensity> body;
};

/// Gauss-Legendre with node doubling until successive estimates agree to
/// rel_tol; throws quadrature_error on non-convergence.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12);

/// Structural validation (support radii, polar positivity hypothesis).
void validate(const Measure& mu);

/// Distributed moment c_{s,k,m} = int |x|^{2s} Y_{k,m}(x) dmu.
double distributed_moment(const Measure& mu, int s, int k, int m);

/// int u dmu for u in Gauss-decomposition or monomial form.
double integrate_poly(const Measure& mu, const polyalg::GaussPoly& u);
double integrate_poly(const Measure& mu,
                      const std::vector<polyalg::Monomial>& u);

/// Total-variation bound used for series tail estimates.
double total_variation_bound(const Measure& mu);

/// int fn(x) dmu for a smooth integrand, by the variant's natural
/// factorization (atom sums, radial quadrature, angular refinement).
double integrate_function(const Measure& mu,
                          const std::function<double(const Point&)>& fn,
                          double rel_tol = 1e-11);

/// Raw moment int r^p dsigma of the radial part.
double radial_moment(const RadialMeasure& sigma, int p);

Measure parse_measure(const std::string& json_text);
std::string emit_measure(const Measure& mu);

}  // namespace mmt::measures

#endif
