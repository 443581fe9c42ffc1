#ifndef MMT_CUBATURE_HPP
#define MMT_CUBATURE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mmt/markov.hpp"
#include "mmt/pade.hpp"

namespace mmt::cubature {

using harmonics::Point;

struct CubaturePoint {
  Point x{0.0, 0.0, 0.0};
  double weight = 0.0;
};

/// Gauss-type cubature functional of order n: a sphere rule crossed with a
/// per-direction Gauss rule extracted from the Pade denominator of the
/// kernel-normalized directional moments surface_area(d) * f_l(theta_j).
/// Combined weights are w_j * alpha_k / surface_area(d); the functional is
/// exact on polynomials of degree <= 2n-1 and positive definite when the
/// provenance is Hankel-positive.
struct CubatureRule {
  int n = 0;
  int d = 2;
  double R = 1.0;
  std::string provenance;
  bool hankel_positive = false;
  double scale = 0.0;  // max directional moment magnitude over the grid
  double mass = 0.0;   // sum of |combined weights|

  harmonics::SphereRule sphere;
  std::vector<pade::GaussRule1D> direction_rules;
  std::vector<pade::PadePair> direction_pairs;
  std::vector<CubaturePoint> points;
};

/// Builds the rule; requires a positive Hankel report on the sphere grid up
/// to order n unless override_positivity is set.  Directions where the
/// Gauss extraction fails are collected into one error.
CubatureRule build_cubature(const markov::CoefficientTable& table, int n,
                            int sphere_degree = -1,
                            bool override_positivity = false,
                            Exec exec = Exec::serial);

/// Weighted point evaluation (the residue form of the functional).
double apply(const CubatureRule& rule, const polyalg::GaussPoly& u,
             Exec exec = Exec::serial);
double apply(const CubatureRule& rule,
             const std::vector<polyalg::Monomial>& u,
             Exec exec = Exec::serial);
double apply_fn(const CubatureRule& rule,
                const std::function<double(const Point&)>& u,
                Exec exec = Exec::serial);

struct ContourValue {
  double value = 0.0;
  bool pole_warning = false;  // min |den| on the contour < 1e-6 * scale
};

/// Trapezoidal contour realization of the same functional on |zeta| = R1
/// composed with the sphere rule; spectrally accurate cross-check of
/// apply().  contour_points < 0 selects 2*(deg u + n) + 16.
ContourValue apply_via_contour(const CubatureRule& rule,
                               const polyalg::GaussPoly& u, double R1,
                               int contour_points = -1);

struct ExactnessRow {
  polyalg::TKM key;
  bool guaranteed = false;  // degree <= 2n-1
  double cubature = 0.0;
  double exact = 0.0;
  double rel_error = 0.0;
};

struct ExactnessReport {
  std::vector<ExactnessRow> rows;
  double scale = 0.0;  // max |exact| over guaranteed rows
  double max_rel_error = 0.0;  // over guaranteed rows
};

/// Compares the rule against direct integration over the full
/// Gauss-decomposition basis of degree <= 2n-1, plus out-of-guarantee rows
/// of degree 2n.  Relative errors divide by max(|exact|, report scale).
ExactnessReport exactness_report(const CubatureRule& rule,
                                 const measures::Measure& mu, int n,
                                 Exec exec = Exec::serial);

struct PositivityCheckReport {
  int trials = 0;
  int violations = 0;
  double worst = 0.0;  // most negative T(p^2) / (|p|^2 * mass)
  bool lift_checked = false;
  double vanishing_rel = 0.0;  // max |T(A_n p^2)| / sum w |A_n| p^2
};

/// Applies the rule to seeded random squares p^2 (degree of p <= 2n+2) and,
/// for n <= 3, checks the two-sided vanishing T(+-A_n p^2) ~ 0 through the
/// denominator lift.
PositivityCheckReport positivity_check(const CubatureRule& rule,
                                       const markov::CoefficientTable& table,
                                       int trials, std::uint64_t seed = 1,
                                       Exec exec = Exec::serial);

/// Largest |f| over the rule's sphere directions at radii R/2 and R; the
/// reference magnitude for vanishing-ideal checks.
double lift_magnitude(const CubatureRule& rule, const polyalg::GaussPoly& f);

}  // namespace mmt::cubature

#endif
