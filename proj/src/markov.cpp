#include "mmt/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mmt/errors.hpp"

namespace mmt::markov {

double HarmonicExpansion::evaluate(const Point& theta) const {
  double acc = 0.0;
  for (const auto& [km, c] : coeffs)
    acc += c * harmonics::eval_Y(d, km.first, km.second, theta);
  return acc;
}

double CoefficientTable::eval(int l, const Point& theta) const {
  if (l < 0 || l > L())
    throw insufficient_moments_error("CoefficientTable: l out of range");
  return f[l].evaluate(theta);
}

CoefficientTable coefficient_table(const measures::Measure& mu, int L,
                                   Exec exec) {
  measures::validate(mu);
  CoefficientTable table;
  table.d = mu.d;
  table.R = mu.R;
  table.tv_bound = measures::total_variation_bound(mu);
  table.f.assign(L + 1, HarmonicExpansion{mu.d, {}});
  parallel_for(static_cast<std::size_t>(L) + 1, exec, [&](std::size_t lu) {
    const int l = static_cast<int>(lu);
    HarmonicExpansion& fl = table.f[l];
    for (int t = 0; 2 * t <= l; ++t) {
      const int k = l - 2 * t;
      for (int m = 1; m <= harmonics::harmonic_count(mu.d, k); ++m) {
        const double c = measures::distributed_moment(mu, t, k, m);
        if (c != 0.0) fl.coeffs[{k, m}] = c;
      }
    }
  });
  return table;
}

DirectionalMoments directional_moments(const CoefficientTable& table,
                                       const Point& theta) {
  DirectionalMoments dm;
  dm.theta = theta;
  std::vector<double> v(table.L() + 1);
  for (int l = 0; l <= table.L(); ++l) v[l] = table.f[l].evaluate(theta);
  dm.values = polyalg::MomentSeq::make(std::move(v));
  return dm;
}

double table_scale(const CoefficientTable& table, int grid_degree) {
  const auto rule = harmonics::sphere_rule(table.d, grid_degree);
  double scale = 0.0;
  for (const auto& node : rule.nodes)
    scale = std::max(scale, directional_moments(table, node).values.scale);
  return scale;
}

polyalg::GaussPoly homog_lift(const CoefficientTable& table, int l) {
  if (l < 0 || l > table.L())
    throw insufficient_moments_error("homog_lift: l out of range");
  polyalg::GaussPoly F(table.d);
  for (const auto& [km, c] : table.f[l].coeffs)
    F.add_term(polyalg::TKM{(l - km.first) / 2, km.first, km.second}, c);
  return F;
}

SeriesValue eval_series(const CoefficientTable& table, Complex zeta,
                        const Point& theta, int L) {
  if (L > table.L())
    throw insufficient_moments_error("eval_series: L exceeds the table");
  const double az = std::abs(zeta);
  if (az <= table.R)
    throw domain_error("eval_series: |zeta| must exceed the support radius");
  const double area = harmonics::surface_area(table.d);
  Complex acc = 0.0;
  const Complex inv = 1.0 / zeta;
  Complex power = inv;  // zeta^{-l-1}
  for (int l = 0; l <= L; ++l) {
    acc += table.f[l].evaluate(theta) * power;
    power *= inv;
  }
  // |area * f_l(theta)| <= B_l * TV * R^l with B_l the count of harmonic
  // components of degree <= l and matching parity (|P_k| <= 1 on [-1,1]).
  const double x = table.R / az;
  double tail = 0.0, term = 0.0;
  int l = L + 1;
  for (; l < L + 20000; ++l) {
    double bl = 0.0;
    for (int t = 0; 2 * t <= l; ++t)
      bl += harmonics::harmonic_count(table.d, l - 2 * t);
    term = table.tv_bound * bl * std::pow(x, l) / az;
    tail += term;
    if (term <= 1e-18 * tail) break;
  }
  if (term > 1e-18 * tail) {
    // Complete the truncated sum with a geometric majorant: the remaining
    // B_{l+j} satisfy B_{l+j} <= B_l exp(2j/(l+2)), so the rest is bounded
    // by a geometric series with ratio y.
    const double y = x * std::exp(2.0 / (l + 2.0));
    tail = y < 1.0 ? tail + term * y / (1.0 - y)
                   : std::numeric_limits<double>::infinity();
  }
  return SeriesValue{area * acc, tail};
}

Complex eval_kernel(const measures::Measure& mu, Complex zeta,
                    const Point& theta) {
  const auto* discrete = std::get_if<measures::Discrete>(&mu.body);
  if (!discrete)
    throw error("eval_kernel: closed kernel form needs a discrete measure");
  const int d = mu.d;
  Complex acc = 0.0;
  for (const auto& [x, w] : discrete->atoms) {
    const double rx = harmonics::norm(x, d);
    if (std::abs(zeta) <= rx)
      throw domain_error("eval_kernel: |zeta| <= |x| for some atom");
    const double proj = harmonics::dot(theta, x, d);
    const Complex a(proj, std::sqrt(std::max(0.0, rx * rx - proj * proj)));
    const Complex g = (1.0 - a / zeta) * (1.0 - std::conj(a) / zeta);
    // r(zeta theta - x)^d = zeta^d g^{d/2}; the principal square root is
    // safe because Re(1 - a/zeta) > 0 keeps g off (-inf, 0].
    Complex gpow;
    if (d == 2) {
      gpow = g;
    } else {
      gpow = g * std::sqrt(g);
    }
    acc += w / (zeta * gpow);
  }
  return acc;
}

double eval_real(const measures::Measure& mu, const Point& y) {
  const int d = mu.d;
  const double ry = harmonics::norm(y, d);
  if (ry <= mu.R)
    throw domain_error("eval_real: |y| must exceed the support radius");
  const double yd = std::pow(ry, d);
  return measures::integrate_function(
      mu,
      [&](const Point& x) {
        double dist2 = 0.0;
        for (int i = 0; i < d; ++i) dist2 += (y[i] - x[i]) * (y[i] - x[i]);
        return yd / std::pow(std::sqrt(dist2), d);
      },
      1e-12);
}

double hankel(const CoefficientTable& table, const Point& theta, int n) {
  if (2 * n - 2 > table.L())
    throw insufficient_moments_error("hankel: table too short for order n");
  return polyalg::hankel_det(directional_moments(table, theta).values, n);
}

polyalg::GaussPoly hankel_poly(const CoefficientTable& table, int n) {
  if (2 * n - 2 > table.L())
    throw insufficient_moments_error("hankel_poly: table too short");
  std::vector<std::vector<polyalg::GaussPoly>> m(
      n, std::vector<polyalg::GaussPoly>(n, polyalg::GaussPoly(table.d)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = homog_lift(table, i + j);
  return polyalg::gauss_poly_det(m);
}

PositivityReport hankel_positivity_report(const CoefficientTable& table,
                                          int N, int sphere_rule_degree,
                                          double tol, Exec exec) {
  if (2 * N - 2 > table.L())
    throw insufficient_moments_error("hankel_positivity_report: short table");
  const auto rule = harmonics::sphere_rule(table.d, sphere_rule_degree);
  PositivityReport report;
  report.tol = tol;
  report.orders = N;
  report.min_per_order.assign(N, 0.0);

  std::vector<polyalg::MomentSeq> seqs(rule.size());
  parallel_for(rule.size(), exec, [&](std::size_t j) {
    seqs[j] = directional_moments(table, rule.nodes[j]).values;
  });
  for (const auto& s : seqs) report.scale = std::max(report.scale, s.scale);

  bool first = true;
  for (int n = 1; n <= N; ++n) {
    double mn = 0.0;
    std::size_t argmin = 0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double h = polyalg::hankel_det(seqs[j], n);
      if (j == 0 || h < mn) {
        mn = h;
        argmin = j;
      }
    }
    report.min_per_order[n - 1] = mn;
    const double rel = mn / std::pow(std::max(report.scale, 1e-300), n);
    if (first || rel < report.min_value) {
      report.min_value = rel;
      report.min_order = n;
      report.witness = rule.nodes[argmin];
      first = false;
    }
  }
  report.positive = true;
  for (int n = 1; n <= N; ++n)
    if (!(report.min_per_order[n - 1] >
          tol * std::pow(std::max(report.scale, 1e-300), n)))
      report.positive = false;
  return report;
}

KroneckerResult kronecker_test(const CoefficientTable& table, int n_max,
                               double tol, Exec exec) {
  if (2 * n_max - 2 > table.L())
    throw insufficient_moments_error("kronecker_test: table too short");
  const auto rule = harmonics::sphere_rule(table.d, 2 * n_max);
  KroneckerResult result;
  result.tol = tol;
  result.max_per_order.assign(n_max, 0.0);
  result.residual.assign(n_max, std::vector<double>(rule.size(), 0.0));

  std::vector<polyalg::MomentSeq> seqs(rule.size());
  parallel_for(rule.size(), exec, [&](std::size_t j) {
    seqs[j] = directional_moments(table, rule.nodes[j]).values;
  });
  for (const auto& s : seqs) result.scale = std::max(result.scale, s.scale);

  for (int m = 1; m <= n_max; ++m)
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double h = polyalg::hankel_det(seqs[j], m);
      result.residual[m - 1][j] = h;
      result.max_per_order[m - 1] =
          std::max(result.max_per_order[m - 1], std::abs(h));
    }

  for (int n = 1; n <= n_max; ++n) {
    bool all_zero = true;
    for (int m = n; m <= n_max; ++m)
      if (result.max_per_order[m - 1] > tol * std::pow(result.scale, m)) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      result.rational = true;
      result.detected_degree = n - 1;
      break;
    }
  }
  return result;
}

HalfPlaneReport upper_halfplane_sign_check(const CoefficientTable& table,
                                           int samples, std::uint64_t seed) {
  HalfPlaneReport report;
  report.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(1.25 * table.R,
                                                3.0 * table.R);
  std::uniform_real_distribution<double> phase(0.05 * std::numbers::pi,
                                               0.95 * std::numbers::pi);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> zcoord(-1.0, 1.0);
  const int L = table.L();
  for (int i = 0; i < samples; ++i) {
    const double rho = radius(rng), ph = phase(rng);
    const Complex zeta = std::polar(rho, ph);
    Point theta;
    if (table.d == 2) {
      theta = harmonics::unit2(angle(rng));
    } else {
      const double z = zcoord(rng);
      const double s = std::sqrt(1.0 - z * z), az = angle(rng);
      theta = Point{s * std::cos(az), s * std::sin(az), z};
    }
    const SeriesValue sv = eval_series(table, zeta, theta, L);
    const double excess = sv.value.imag() - sv.tail_bound;
    if (excess > 0.0) {
      ++report.violations;
      report.worst_excess = std::max(report.worst_excess, excess);
    }
  }
  return report;
}

}  // namespace mmt::markov
