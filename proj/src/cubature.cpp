#include "mmt/cubature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mmt/errors.hpp"

namespace mmt::cubature {

namespace {
constexpr double kPi = std::numbers::pi;
}

CubatureRule build_cubature(const markov::CoefficientTable& table, int n,
                            int sphere_degree, bool override_positivity,
                            Exec exec) {
  if (n < 1) throw error("build_cubature: order must be >= 1");
  if (2 * n - 1 > table.L())
    throw insufficient_moments_error("build_cubature: table too short");
  if (sphere_degree < 0) sphere_degree = 2 * (2 * n - 1) + 1;

  CubatureRule rule;
  rule.n = n;
  rule.d = table.d;
  rule.R = table.R;
  rule.provenance = table.provenance;
  rule.sphere = harmonics::sphere_rule(table.d, sphere_degree);

  if (!override_positivity) {
    const auto report =
        markov::hankel_positivity_report(table, n, sphere_degree, 1e-10, exec);
    if (!report.positive) {
      std::ostringstream msg;
      msg << "build_cubature: Hankel positivity fails on the grid (min H_"
          << report.min_order << " relative value " << report.min_value
          << "); pass override_positivity to proceed";
      throw error(msg.str());
    }
    rule.hankel_positive = true;
  }

  const double area = harmonics::surface_area(table.d);
  const std::size_t count = rule.sphere.size();
  rule.direction_rules.resize(count);
  rule.direction_pairs.resize(count);
  std::vector<std::string> failures(count);

  parallel_for(count, exec, [&](std::size_t j) {
    markov::DirectionalMoments dm =
        markov::directional_moments(table, rule.sphere.nodes[j]);
    for (double& v : dm.values.values) v *= area;  // kernel normalization
    dm.values = polyalg::MomentSeq::make(std::move(dm.values.values));
    try {
      rule.direction_pairs[j] =
          pade::pade_pair(dm, n, pade::Method::linear_solve);
      rule.direction_rules[j] = pade::gauss_rule(dm, n, table.R);
    } catch (const mmt::error& e) {
      std::ostringstream msg;
      msg << "theta_" << j << " = (" << rule.sphere.nodes[j][0] << ", "
          << rule.sphere.nodes[j][1];
      if (table.d == 3) msg << ", " << rule.sphere.nodes[j][2];
      msg << "): " << e.what();
      failures[j] = msg.str();
    }
  });

  std::string all_failures;
  for (const auto& f : failures)
    if (!f.empty()) all_failures += (all_failures.empty() ? "" : "; ") + f;
  if (!all_failures.empty())
    throw error("build_cubature: degenerate directions: " + all_failures);

  for (std::size_t j = 0; j < count; ++j) {
    rule.scale = std::max(rule.scale, rule.direction_pairs[j].scale);
    const auto& gr = rule.direction_rules[j];
    for (std::size_t k = 0; k < gr.nodes.size(); ++k) {
      CubaturePoint pt;
      for (int i = 0; i < table.d; ++i)
        pt.x[i] = gr.nodes[k] * rule.sphere.nodes[j][i];
      pt.weight = rule.sphere.weights[j] * gr.weights[k] / area;
      rule.mass += std::abs(pt.weight);
      rule.points.push_back(pt);
    }
  }
  return rule;
}

double apply_fn(const CubatureRule& rule,
                const std::function<double(const Point&)>& u, Exec exec) {
  std::vector<double> partial(rule.points.size());
  parallel_for(rule.points.size(), exec, [&](std::size_t i) {
    partial[i] = rule.points[i].weight * u(rule.points[i].x);
  });
  double acc = 0.0;  // fixed-order reduction keeps results run-independent
  for (double v : partial) acc += v;
  return acc;
}

double apply(const CubatureRule& rule, const polyalg::GaussPoly& u,
             Exec exec) {
  return apply_fn(
      rule, [&](const Point& x) { return polyalg::homog_eval(u, x); }, exec);
}

double apply(const CubatureRule& rule, const std::vector<polyalg::Monomial>& u,
             Exec exec) {
  return apply_fn(
      rule,
      [&](const Point& x) {
        double acc = 0.0;
        for (const auto& mono : u) {
          double v = mono.coeff;
          for (int i = 0; i < rule.d; ++i)
            v *= std::pow(x[i], mono.exponents[i]);
          acc += v;
        }
        return acc;
      },
      exec);
}

ContourValue apply_via_contour(const CubatureRule& rule,
                               const polyalg::GaussPoly& u, double R1,
                               int contour_points) {
  if (R1 <= rule.R)
    throw domain_error("apply_via_contour: R1 must exceed the support radius");
  const int deg = u.max_degree();
  const int M = contour_points > 0 ? contour_points
                                   : 2 * (deg + rule.n) + 16;
  const double area = harmonics::surface_area(rule.d);

  ContourValue out;
  double min_den = -1.0;
  polyalg::Complex total = 0.0;
  for (std::size_t j = 0; j < rule.sphere.size(); ++j) {
    const auto& pair = rule.direction_pairs[j];
    polyalg::Complex ring = 0.0;
    for (int q = 0; q < M; ++q) {
      const polyalg::Complex zeta = std::polar(R1, 2.0 * kPi * q / M);
      const polyalg::Complex den = pair.den.eval(zeta);
      const double mag = std::abs(den);
      if (min_den < 0.0 || mag < min_den) min_den = mag;
      const polyalg::Complex uval =
          polyalg::homog_eval_scaled(u, zeta, rule.sphere.nodes[j]);
      ring += uval * pair.num.eval(zeta) / den * zeta;
    }
    // (1/2 pi i) closed-circle integral as an M-point trapezoid.
    total += rule.sphere.weights[j] * ring / static_cast<double>(M);
  }
  out.value = (total / area).real();
  out.pole_warning = min_den < 1e-6 * std::max(rule.scale, 1e-300);
  return out;
}

ExactnessReport exactness_report(const CubatureRule& rule,
                                 const measures::Measure& mu, int n,
                                 Exec exec) {
  ExactnessReport report;
  const int d = rule.d;
  for (int g = 0; g <= 2 * n; ++g) {
    const bool guaranteed = g <= 2 * n - 1;
    for (int k = g % 2; k <= g; k += 2)
      for (int m = 1; m <= harmonics::harmonic_count(d, k); ++m) {
        ExactnessRow row;
        row.key = polyalg::TKM{(g - k) / 2, k, m};
        row.guaranteed = guaranteed;
        report.rows.push_back(row);
      }
  }
  parallel_for(report.rows.size(), exec, [&](std::size_t i) {
    ExactnessRow& row = report.rows[i];
    polyalg::GaussPoly basis(d);
    basis.add_term(row.key, 1.0);
    row.cubature = apply(rule, basis, Exec::serial);
    row.exact = measures::distributed_moment(mu, row.key.t, row.key.k,
                                             row.key.m);
  });
  for (const auto& row : report.rows)
    if (row.guaranteed)
      report.scale = std::max(report.scale, std::abs(row.exact));
  for (auto& row : report.rows) {
    row.rel_error = std::abs(row.cubature - row.exact) /
                    std::max(std::abs(row.exact),
                             std::max(report.scale, 1e-300));
    if (row.guaranteed)
      report.max_rel_error = std::max(report.max_rel_error, row.rel_error);
  }
  return report;
}

namespace {

std::vector<polyalg::Monomial> random_polynomial(int d, int max_degree,
                                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<polyalg::Monomial> p;
  for (int gx = 0; gx <= max_degree; ++gx)
    for (int gy = 0; gy + gx <= max_degree; ++gy) {
      if (d == 2) {
        p.push_back({{gx, gy, 0}, coeff(rng)});
      } else {
        for (int gz = 0; gz + gy + gx <= max_degree; ++gz)
          p.push_back({{gx, gy, gz}, coeff(rng)});
      }
    }
  return p;
}

double eval_monomials(const std::vector<polyalg::Monomial>& p, const Point& x,
                      int d) {
  double acc = 0.0;
  for (const auto& mono : p) {
    double v = mono.coeff;
    for (int i = 0; i < d; ++i) v *= std::pow(x[i], mono.exponents[i]);
    acc += v;
  }
  return acc;
}

}  // namespace

double lift_magnitude(const CubatureRule& rule, const polyalg::GaussPoly& f) {
  double norm = 0.0;
  for (const auto& node : rule.sphere.nodes)
    for (double r : {0.5 * rule.R, rule.R}) {
      Point x = node;
      for (int i = 0; i < rule.d; ++i) x[i] *= r;
      norm = std::max(norm, std::abs(polyalg::homog_eval(f, x)));
    }
  return norm;
}

PositivityCheckReport positivity_check(const CubatureRule& rule,
                                       const markov::CoefficientTable& table,
                                       int trials, std::uint64_t seed,
                                       Exec exec) {
  PositivityCheckReport report;
  report.trials = trials;
  std::mt19937_64 rng(seed);
  const int max_degree = 2 * rule.n + 2;

  std::vector<std::vector<polyalg::Monomial>> polys;
  polys.reserve(trials);
  for (int t = 0; t < trials; ++t)
    polys.push_back(random_polynomial(rule.d, max_degree, rng));

  std::vector<double> rel(trials, 0.0);
  parallel_for(static_cast<std::size_t>(trials), exec, [&](std::size_t t) {
    const auto& p = polys[t];
    double norm2 = 0.0;
    for (const auto& mono : p) norm2 += mono.coeff * mono.coeff;
    double val = 0.0;
    for (const auto& pt : rule.points) {
      const double pv = eval_monomials(p, pt.x, rule.d);
      val += pt.weight * pv * pv;
    }
    rel[t] = val / std::max(norm2 * rule.mass, 1e-300);
  });
  for (int t = 0; t < trials; ++t) {
    if (rel[t] < -1e-10) ++report.violations;
    report.worst = std::min(report.worst, rel[t]);
  }

  if (rule.n <= 3 && 2 * rule.n - 1 <= table.L()) {
    const polyalg::GaussPoly lift = pade::lift_denominator(table, rule.n);
    report.lift_checked = true;
    const double norm = lift_magnitude(rule, lift);
    for (int t = 0; t < std::min(trials, 20); ++t) {
      const auto& p = polys[t];
      double signed_sum = 0.0, p2_max = 0.0;
      for (const auto& pt : rule.points) {
        const double pv = eval_monomials(p, pt.x, rule.d);
        const double av = polyalg::homog_eval(lift, pt.x);
        signed_sum += pt.weight * av * pv * pv;
        p2_max = std::max(p2_max, pv * pv);
      }
      // T(A_n p^2) and T(-A_n p^2) vanish together; one ratio covers both.
      // The lift vanishes on the node set, so the reference magnitude is
      // its size away from the nodes, not at them.
      report.vanishing_rel =
          std::max(report.vanishing_rel,
                   std::abs(signed_sum) /
                       std::max(rule.mass * norm * p2_max, 1e-300));
    }
  }
  return report;
}

}  // namespace mmt::cubature
