#ifndef MMT_PADE_HPP
#define MMT_PADE_HPP

#include <vector>

#include "mmt/markov.hpp"
#include "mmt/polyalg.hpp"

namespace mmt::pade {

using harmonics::Point;
using polyalg::Complex;
using polyalg::UniPoly;

enum class Method { determinant, linear_solve };

/// Direction-parametrized Pade pair of order n for the moment sequence
/// f_l(theta).  Construction runs on the unit-scale sequence f/scale; the
/// raw pair is rescaled back to original units afterwards, so den_raw
/// matches the determinant normalization of the moment matrix and
/// remainder_head stays in unit-scale terms (compare against 1e-10).
struct PadePair {
  int n = 0;
  Point theta{1.0, 0.0, 0.0};
  Method construction = Method::linear_solve;
  bool normal = false;
  double scale = 0.0;   // normalization used during construction
  double hankel = 0.0;  // H_n in original units

  UniPoly den_raw;  // degree <= n, original units
  UniPoly num_raw;  // its polynomial part, degree <= n-1
  UniPoly den;      // monic denominator (equals den_raw/lead when normal)
  UniPoly num;      // polynomial part matching den

  std::vector<Complex> remainder_head;  // unit-scale zeta^{-1}..zeta^{-n}
};

/// Normality tolerance: |H_n| > kNormalityTol * scale^n.
inline constexpr double kNormalityTol = 1e-10;

/// Builds the pair by the moment-matrix determinant (cofactor minors) or by
/// the monic Hankel linear solve (minimal-norm least squares when the
/// system is singular).  The determinant route throws degenerate_pair_error
/// when every coefficient collapses to zero.
PadePair pade_pair(const markov::DirectionalMoments& dm, int n, Method method);

/// Polynomial lift of the denominator: A(zeta theta) = zeta^{n^2} * den_raw.
/// Components have degrees n^2..n^2+n.  Capped at n <= 5.
polyalg::GaussPoly lift_denominator(const markov::CoefficientTable& table,
                                    int n);

/// Polynomial lift of the numerator: zeta * B(zeta theta) = zeta^{n^2} *
/// num_raw.  Degree <= n^2+n-2.  Capped at n <= 5.
polyalg::GaussPoly lift_numerator(const markov::CoefficientTable& table,
                                  int n);

/// Gauss quadrature extracted from the Pade denominator: nodes are its
/// roots in (-R, R), weights num(x_k)/den'(x_k).
struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  bool negative_weight = false;
  double moment_defect = 0.0;  // max relative error reproducing f_0..f_{2n-1}
};

GaussRule1D gauss_rule(const markov::DirectionalMoments& dm, int n, double R);

/// Smallest radius R_1 = R * 2^j with
/// |p_n| R_1^n > sum_{j<n} |p_j| R_1^j on the whole grid of pairs, which
/// keeps every denominator zero-free on |zeta| >= R_1.
double choose_R1(const std::vector<PadePair>& pairs, double R);

}  // namespace mmt::pade

#endif
