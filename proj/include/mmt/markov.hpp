#ifndef MMT_MARKOV_HPP
#define MMT_MARKOV_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmt/measures.hpp"
#include "mmt/parallel.hpp"
#include "mmt/polyalg.hpp"

namespace mmt::markov {

using polyalg::Complex;
using harmonics::Point;

/// Finite combination of spherical harmonics, keyed by (k, m).
struct HarmonicExpansion {
  int d = 2;
  std::map<std::pair<int, int>, double> coeffs;

  double evaluate(const Point& theta) const;
};

/// Coefficient functions f_0..f_L of the asymptotic expansion of the
/// transform of a measure.  Stored in the expansion convention of the
/// distributed moments: f_l = sum_t sum_m c_{t,l-2t,m} Y_{l-2t,m}; the
/// kernel-normalized coefficients are surface_area(d) * f_l (see
/// eval_series).
struct CoefficientTable {
  int d = 2;
  double R = 1.0;
  double tv_bound = 0.0;  // total-variation bound for tail estimates
  std::string provenance;
  std::vector<HarmonicExpansion> f;

  int L() const { return static_cast<int>(f.size()) - 1; }
  double eval(int l, const Point& theta) const;
};

/// One direction's moment sequence f_l(theta), l = 0..L.
struct DirectionalMoments {
  Point theta{1.0, 0.0, 0.0};
  polyalg::MomentSeq values;
};

CoefficientTable coefficient_table(const measures::Measure& mu, int L,
                                   Exec exec = Exec::serial);

DirectionalMoments directional_moments(const CoefficientTable& table,
                                       const Point& theta);

/// Largest directional scale max_l |f_l(theta)| over a sampling grid.
double table_scale(const CoefficientTable& table, int grid_degree = 16);

/// Homogeneous polynomial F_l with F_l(rho theta) = rho^l f_l(theta).
polyalg::GaussPoly homog_lift(const CoefficientTable& table, int l);

struct SeriesValue {
  Complex value;
  double tail_bound = 0.0;
};

/// Truncated expansion of the transform at (zeta, theta) in the kernel
/// normalization: surface_area(d) * sum_{l<=L} f_l(theta) zeta^{-l-1},
/// with a total-variation tail bound.  Throws for |zeta| <= R.
SeriesValue eval_series(const CoefficientTable& table, Complex zeta,
                        const Point& theta, int L);

/// Exact kernel sum for discrete measures:
/// sum_i w_i zeta^{d-1} / r(zeta theta - x_i)^d with
/// r^2 = (zeta - a)(zeta - conj(a)), principal square root for odd d.
Complex eval_kernel(const measures::Measure& mu, Complex zeta,
                    const Point& theta);

/// Real transform int |y|^d / |y - x|^d dmu for |y| > R.
double eval_real(const measures::Measure& mu, const Point& y);

/// Hankel determinant of the directional sequence at theta.
double hankel(const CoefficientTable& table, const Point& theta, int n);

/// Homogeneous polynomial of degree n(n-1) restricting to
/// zeta^{n(n-1)} H_n(theta) along rays.
polyalg::GaussPoly hankel_poly(const CoefficientTable& table, int n);

struct PositivityReport {
  bool positive = false;
  double tol = 1e-10;
  double scale = 0.0;
  int orders = 0;
  std::vector<double> min_per_order;  // min over the grid of H_n
  Point witness{1.0, 0.0, 0.0};       // direction of the overall minimum
  double min_value = 0.0;
  int min_order = 1;
};

PositivityReport hankel_positivity_report(const CoefficientTable& table,
                                          int N, int sphere_rule_degree,
                                          double tol = 1e-10,
                                          Exec exec = Exec::serial);

struct KroneckerResult {
  bool rational = false;
  std::optional<int> detected_degree;
  double tol = 1e-8;
  double scale = 0.0;
  std::vector<double> max_per_order;  // max over the grid of |H_m|, m=1..
  std::vector<std::vector<double>> residual;  // residual[m-1][j] = H_m at node j
};

/// Numerical Kronecker rationality test: smallest n with
/// max_theta |H_m| <= tol * scale^m for every m in [n, n_max].
KroneckerResult kronecker_test(const CoefficientTable& table, int n_max,
                               double tol = 1e-8, Exec exec = Exec::serial);

struct HalfPlaneReport {
  int samples = 0;
  int violations = 0;
  double worst_excess = 0.0;  // max of Im(value) - tail_bound over samples
};

/// Samples Im zeta > 0, |zeta| > R and checks Im of the series stays below
/// its tail bound (the transform of a Hankel-positive measure has
/// non-positive imaginary part in the upper half plane).
HalfPlaneReport upper_halfplane_sign_check(const CoefficientTable& table,
                                           int samples,
                                           std::uint64_t seed = 1);

}  // namespace mmt::markov

#endif
