#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mmt/cubature.hpp"
#include "mmt/errors.hpp"
#include "mmt/examples.hpp"
#include "mmt/io.hpp"

using namespace mmt;
using harmonics::Point;
using polyalg::Complex;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rule construction on the positive polar example") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 12);
  const auto rule = cubature::build_cubature(table, 3);
  CHECK(rule.hankel_positive);
  for (const auto& gr : rule.direction_rules) CHECK(gr.nodes.size() == 3);
  for (const auto& pt : rule.points) {
    CHECK(pt.weight > 0.0);
    CHECK(harmonics::norm(pt.x, 2) < rule.R);
  }
  // Total mass: T(1) = pi for the unit-disc density.
  CHECK(cubature::apply(rule, polyalg::from_monomials(2, {{{0, 0, 0}, 1.0}})) ==
        doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("rotation-invariant measures give direction-independent rules") {
  const auto mu = *examples::builtin_example("ex0");
  const auto table = markov::coefficient_table(mu, 8);
  const auto rule = cubature::build_cubature(table, 2);
  REQUIRE(rule.direction_rules.size() >= 2);
  const auto& first = rule.direction_rules.front();
  for (const auto& gr : rule.direction_rules)
    for (std::size_t k = 0; k < gr.nodes.size(); ++k) {
      CHECK(gr.nodes[k] == doctest::Approx(first.nodes[k]).epsilon(1e-12));
      CHECK(gr.weights[k] == doctest::Approx(first.weights[k]).epsilon(1e-12));
    }
}

TEST_CASE("degenerate measures are refused") {
  const auto mu = *examples::builtin_example("ex1-degenerate");
  const auto table = markov::coefficient_table(mu, 10);
  CHECK_THROWS_WITH_AS(cubature::build_cubature(table, 2),
                       doctest::Contains("positivity"), mmt::error);
  // Forcing construction surfaces the per-direction failures instead.
  CHECK_THROWS_WITH_AS(cubature::build_cubature(table, 2, -1, true),
                       doctest::Contains("degenerate directions"), mmt::error);
}

TEST_CASE("exactness against the independent integration oracle") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 12);
  for (int n : {2, 3}) {
    const auto rule = cubature::build_cubature(table, n);
    const auto report = cubature::exactness_report(rule, mu, n);
    CHECK(report.max_rel_error <= 1e-8);
    // Out-of-guarantee rows exist and are only reported.
    bool has_unguaranteed = false;
    for (const auto& row : report.rows)
      if (!row.guaranteed) has_unguaranteed = true;
    CHECK(has_unguaranteed);
  }
}

TEST_CASE("exactness at the largest supported order") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 20, Exec::par);
  const auto rule = cubature::build_cubature(table, 5, -1, false, Exec::par);
  const auto report = cubature::exactness_report(rule, mu, 5, Exec::par);
  CHECK(report.max_rel_error <= 1e-8);
}

TEST_CASE("exactness is unaffected by zero-weight atoms") {
  measures::Measure mu;
  mu.d = 2;
  mu.R = 1.0;
  mu.body = measures::Discrete{{{{0.4, 0.1, 0.0}, 1.0},
                                {{-0.3, 0.2, 0.0}, 0.5}}};
  measures::Measure padded = mu;
  std::get<measures::Discrete>(padded.body)
      .atoms.push_back({{0.9, 0.0, 0.0}, 0.0});
  const auto ta = markov::coefficient_table(mu, 8);
  const auto tb = markov::coefficient_table(padded, 8);
  for (int l = 0; l <= 8; ++l) {
    const Point theta = harmonics::unit2(0.37 * l);
    CHECK(ta.eval(l, theta) == doctest::Approx(tb.eval(l, theta)));
  }
}

TEST_CASE("apply equals the neuTform double sum for low degree") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 12);
  const int n = 3;
  const auto rule = cubature::build_cubature(table, n);
  // u = |x|^2 * Y_{1,1}-style element: u_l(theta) picks l = 2t + k.
  polyalg::GaussPoly u(2);
  u.add_term(polyalg::TKM{1, 1, 1}, 1.0);
  const double got = cubature::apply(rule, u);
  double expected = 0.0;  // (1/area) * int u_3(theta) * area*f_3(theta) dtheta
  for (std::size_t j = 0; j < rule.sphere.size(); ++j)
    expected += rule.sphere.weights[j] *
                harmonics::eval_Y(2, 1, 1, rule.sphere.nodes[j]) *
                table.eval(3, rule.sphere.nodes[j]);
  CHECK(got == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
}

TEST_CASE("contour realization agrees with the residue form") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 12);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int n : {2, 3}) {
    const auto rule = cubature::build_cubature(table, n);
    const double r1 = pade::choose_R1(rule.direction_pairs, rule.R);
    std::vector<polyalg::Monomial> monos;
    for (int gx = 0; gx + 0 <= 2 * n - 1; ++gx)
      for (int gy = 0; gy + gx <= 2 * n - 1; ++gy)
        monos.push_back({{gx, gy, 0}, uni(rng)});
    const auto u = polyalg::from_monomials(2, monos);
    const double direct = cubature::apply(rule, u);
    const auto contour = cubature::apply_via_contour(rule, u, r1);
    CHECK_FALSE(contour.pole_warning);
    CHECK(contour.value ==
          doctest::Approx(direct).epsilon(1e-7).scale(rule.mass));
  }
}

TEST_CASE("contour of a pole-free integrand vanishes") {
  // A hand-built rule whose pairs carry a zero numerator: the integrand is
  // then a pure polynomial and the contour integral must be zero.
  cubature::CubatureRule rule;
  rule.n = 2;
  rule.d = 2;
  rule.R = 1.0;
  rule.scale = 1.0;
  rule.sphere = harmonics::sphere_rule(2, 3);
  pade::PadePair pair;
  pair.n = 2;
  pair.normal = true;
  pair.den = polyalg::UniPoly::from_real({0.0, 0.0, 1.0});
  pair.num = polyalg::UniPoly();
  rule.direction_pairs.assign(rule.sphere.size(), pair);
  rule.direction_rules.assign(rule.sphere.size(), pade::GaussRule1D{});
  const auto u = polyalg::from_monomials(2, {{{2, 1, 0}, 0.7}});
  CHECK(std::abs(cubature::apply_via_contour(rule, u, 2.0).value) < 1e-12);
}

TEST_CASE("positive definiteness and the vanishing ideal") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 12);
  const auto rule = cubature::build_cubature(table, 3);

  const auto report = cubature::positivity_check(rule, table, 100, 20240501);
  CHECK(report.violations == 0);
  CHECK(report.worst >= -1e-10);
  CHECK(report.lift_checked);
  CHECK(report.vanishing_rel <= 1e-8);

  // T(A_n v) ~ 0 for arbitrary polynomials v (degree <= 3); the reference
  // magnitude is the lift's size away from its zero set.
  const auto lift = pade::lift_denominator(table, 3);
  const double norm = cubature::lift_magnitude(rule, lift);
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<polyalg::Monomial> monos;
    for (int gx = 0; gx <= 3; ++gx)
      for (int gy = 0; gy + gx <= 3; ++gy)
        monos.push_back({{gx, gy, 0}, uni(rng)});
    double signed_sum = 0.0, v_max = 0.0;
    for (const auto& pt : rule.points) {
      double v = 0.0;
      for (const auto& mono : monos)
        v += mono.coeff * std::pow(pt.x[0], mono.exponents[0]) *
             std::pow(pt.x[1], mono.exponents[1]);
      const double av = polyalg::homog_eval(lift, pt.x);
      signed_sum += pt.weight * av * v;
      v_max = std::max(v_max, std::abs(v));
    }
    CHECK(std::abs(signed_sum) <= 1e-8 * rule.mass * norm * v_max);
  }
}

TEST_CASE("squared-remainder expansion identity") {
  // T(p^2) equals (1/area) int sum e_k e_l phi_{k+l} dtheta where e is the
  // remainder of p(zeta theta) modulo the directional denominator.
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 12);
  const int n = 2;
  const auto rule = cubature::build_cubature(table, n);
  const double area = harmonics::surface_area(2);

  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<polyalg::Monomial> monos;
  for (int gx = 0; gx <= 2; ++gx)
    for (int gy = 0; gy + gx <= 2; ++gy)
      monos.push_back({{gx, gy, 0}, uni(rng)});
  const auto p = polyalg::from_monomials(2, monos);

  double direct = 0.0;
  for (const auto& pt : rule.points) {
    const double v = polyalg::homog_eval(p, pt.x);
    direct += pt.weight * v * v;
  }

  double via_e = 0.0;
  for (std::size_t j = 0; j < rule.sphere.size(); ++j) {
    const Point& theta = rule.sphere.nodes[j];
    // p(zeta theta) as a univariate polynomial in zeta.
    std::vector<Complex> coeffs(p.max_degree() + 1, Complex(0.0));
    for (const auto& [key, c] : p.terms())
      coeffs[2 * key.t + key.k] +=
          c * harmonics::eval_Y(2, key.k, key.m, theta);
    const polyalg::UniPoly pz{coeffs};
    const auto [quot, e] = pz.divrem(rule.direction_pairs[j].den);
    double b = 0.0;
    for (int k = 0; k <= e.degree(); ++k)
      for (int l = 0; l <= e.degree(); ++l)
        b += (e.coeff(k) * e.coeff(l)).real() * area *
             table.eval(k + l, theta);
    via_e += rule.sphere.weights[j] * b;
  }
  via_e /= area;
  CHECK(via_e == doctest::Approx(direct).epsilon(1e-8).scale(1.0));
}

TEST_CASE("three-dimensional rule on a rotation-invariant measure") {
  measures::RadialAtoms atoms;
  atoms.atoms = {{0.45, 1.0}, {0.85, 0.7}};
  measures::Measure mu;
  mu.d = 3;
  mu.R = 1.0;
  mu.body = measures::RadialProduct{atoms};
  const auto table = markov::coefficient_table(mu, 8);
  const int n = 2;
  const auto rule = cubature::build_cubature(table, n);
  const auto report = cubature::exactness_report(rule, mu, n);
  CHECK(report.max_rel_error <= 1e-8);
  for (const auto& pt : rule.points) CHECK(pt.weight > 0.0);
}

TEST_CASE("rule export round trip") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 8);
  const auto rule = cubature::build_cubature(table, 2);
  const std::string js = io::rule_json(rule);
  CHECK(js.find("\"n\": 2") != std::string::npos);
  const std::string csv = io::rule_csv(rule);
  std::size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == rule.points.size() + 1);
}
