#include "mmt/pade.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mmt/errors.hpp"

namespace mmt::pade {

namespace {

// Minors of the n x (n+1) moment matrix (f_{i+j}), signed so that
// sum_j p_j zeta^j is the last-row cofactor expansion of the full
// determinant with row (1, zeta, ..., zeta^n) appended.
std::vector<double> determinant_coefficients(const std::vector<double>& f,
                                             int n) {
  std::vector<double> p(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    std::vector<std::vector<double>> minor(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c <= n; ++c) {
        if (c == j) continue;
        minor[i][cc++] = f[i + c];
      }
    }
    const double sign = ((n + j) % 2 == 0) ? 1.0 : -1.0;
    p[j] = sign * polyalg::det_lu(std::move(minor));
  }
  return p;
}

double pack_angle(const Point& theta) {
  return std::atan2(theta[1], theta[0]);
}

}  // namespace

PadePair pade_pair(const markov::DirectionalMoments& dm, int n,
                   Method method) {
  if (n < 1) throw error("pade_pair: order must be >= 1");
  if (static_cast<int>(dm.values.size()) < 2 * n)
    throw insufficient_moments_error("pade_pair: need at least 2n moments");

  PadePair pair;
  pair.n = n;
  pair.theta = dm.theta;
  pair.construction = method;
  pair.scale = dm.values.scale;

  const polyalg::MomentSeq fn = dm.values.normalized();
  const double hn = polyalg::hankel_det(fn, n);
  pair.normal = std::abs(hn) > kNormalityTol;
  pair.hankel = hn * std::pow(std::max(pair.scale, 1e-300), n);
  if (pair.scale == 0.0) pair.hankel = 0.0;

  UniPoly den_unit;
  if (method == Method::determinant) {
    const std::vector<double> p = determinant_coefficients(fn.values, n);
    double maxp = 0.0;
    for (double v : p) maxp = std::max(maxp, std::abs(v));
    if (maxp <= 1e-10)
      throw degenerate_pair_error(
          "pade_pair: determinant polynomial collapsed to zero",
          pack_angle(dm.theta));
    den_unit = UniPoly::from_real(p);
  } else {
    // Monic denominator from the Hankel system; a rank-revealing solve
    // yields the minimal-norm solution in the singular-but-consistent case.
    Eigen::MatrixXd h(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      rhs(i) = -fn.values[n + i];
      for (int j = 0; j < n; ++j) h(i, j) = fn.values[i + j];
    }
    Eigen::VectorXd q =
        h.completeOrthogonalDecomposition().solve(rhs);
    std::vector<double> coeffs(n + 1, 0.0);
    for (int j = 0; j < n; ++j) coeffs[j] = q(j);
    coeffs[n] = 1.0;
    den_unit = UniPoly::from_real(coeffs);
  }

  const UniPoly num_unit = polyalg::polynomial_part(den_unit, fn);
  pair.remainder_head = polyalg::laurent_product_head(den_unit, fn, n);

  // Rescale the raw pair to the original moment units: the n moment rows of
  // the determinant scale linearly, the polynomial part adds one factor.
  const double s = pair.scale > 0.0 ? pair.scale : 1.0;
  const double sn = std::pow(s, n);
  if (method == Method::determinant) {
    pair.den_raw = den_unit.scaled(sn);
    pair.num_raw = num_unit.scaled(sn * s);
  } else {
    pair.den_raw = den_unit;
    pair.num_raw = polyalg::polynomial_part(den_unit, dm.values);
  }

  if (pair.normal && pair.den_raw.degree() == n) {
    pair.den = pair.den_raw.scaled(1.0 / pair.den_raw.coeff(n));
    pair.num = polyalg::polynomial_part(pair.den, dm.values);
  } else {
    pair.den = pair.den_raw;
    pair.num = pair.num_raw;
  }
  return pair;
}

namespace {

// Signed minor lifts R_j with R_j(zeta theta) = zeta^{n^2-j} p_j(theta).
std::vector<polyalg::GaussPoly> minor_lifts(
    const markov::CoefficientTable& table, int n) {
  if (n > 5)
    throw error("polynomial lift capped at n <= 5 (term growth)");
  if (2 * n - 1 > table.L())
    throw insufficient_moments_error("polynomial lift: table too short");
  std::vector<polyalg::GaussPoly> lifts;
  lifts.reserve(n + 1);
  for (int j = 0; j <= n; ++j) {
    std::vector<std::vector<polyalg::GaussPoly>> minor(
        n, std::vector<polyalg::GaussPoly>(n, polyalg::GaussPoly(table.d)));
    for (int i = 0; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c <= n; ++c) {
        if (c == j) continue;
        minor[i][cc++] = markov::homog_lift(table, i + c);
      }
    }
    polyalg::GaussPoly det = polyalg::gauss_poly_det(minor);
    lifts.push_back(((n + j) % 2 == 0) ? det : det.scaled(-1.0));
  }
  return lifts;
}

}  // namespace

polyalg::GaussPoly lift_denominator(const markov::CoefficientTable& table,
                                    int n) {
  const auto lifts = minor_lifts(table, n);
  polyalg::GaussPoly acc(table.d);
  for (int j = 0; j <= n; ++j) acc += lifts[j].radial_shift(j);
  return acc;
}

polyalg::GaussPoly lift_numerator(const markov::CoefficientTable& table,
                                  int n) {
  const auto lifts = minor_lifts(table, n);
  polyalg::GaussPoly acc(table.d);
  for (int k = 0; k < n; ++k) {
    polyalg::GaussPoly layer(table.d);
    for (int l = 0; l <= n - 1 - k; ++l)
      layer += markov::homog_lift(table, l) * lifts[k + 1 + l];
    acc += layer.radial_shift(k);
  }
  return acc;
}

GaussRule1D gauss_rule(const markov::DirectionalMoments& dm, int n,
                       double R) {
  if (static_cast<int>(dm.values.size()) < 2 * n)
    throw insufficient_moments_error("gauss_rule: need at least 2n moments");
  const PadePair pair = pade_pair(dm, n, Method::linear_solve);
  if (!pair.normal)
    throw root_defect_error(
        "gauss_rule: Hankel determinant below the normality tolerance");

  const auto roots = polyalg::real_roots(pair.den, -R, R);
  if (static_cast<int>(roots.roots.size()) < n)
    throw root_defect_error(
        "gauss_rule: fewer than n real roots inside (-R, R); the "
        "positivity hypothesis fails at this direction");

  GaussRule1D rule;
  rule.nodes = roots.roots;
  const UniPoly dden = pair.den.derivative();
  for (double x : rule.nodes) {
    const double w = (pair.num.eval(x) / dden.eval(x)).real();
    if (w <= 0.0) rule.negative_weight = true;
    rule.weights.push_back(w);
  }
  const double s = std::max(dm.values.scale, 1e-300);
  for (int l = 0; l < 2 * n; ++l) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += rule.weights[k] * std::pow(rule.nodes[k], l);
    rule.moment_defect =
        std::max(rule.moment_defect, std::abs(acc - dm.values.values[l]) / s);
  }
  return rule;
}

double choose_R1(const std::vector<PadePair>& pairs, double R) {
  if (pairs.empty()) throw error("choose_R1: empty grid");
  for (const PadePair& pair : pairs)
    if (!pair.normal)
      throw error("choose_R1: grid contains a non-normal pair");
  for (int doubling = 1; doubling <= 60; ++doubling) {
    const double r1 = R * std::pow(2.0, doubling);
    bool ok = true;
    for (const PadePair& pair : pairs) {
      const int n = pair.den.degree();
      double lead = std::abs(pair.den.coeff(n)) * std::pow(r1, n);
      for (int j = 0; j < n; ++j)
        lead -= std::abs(pair.den.coeff(j)) * std::pow(r1, j);
      if (!(lead > 0.0)) {
        ok = false;
        break;
      }
    }
    if (ok) return r1;
  }
  throw error("choose_R1: no radius found (degenerate grid?)");
}

}  // namespace mmt::pade
