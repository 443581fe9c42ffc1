#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mmt/errors.hpp"
#include "mmt/examples.hpp"
#include "mmt/io.hpp"
#include "mmt/markov.hpp"

using namespace mmt;
using harmonics::Point;
using markov::CoefficientTable;
using measures::Measure;
using polyalg::Complex;

namespace {
constexpr double kPi = std::numbers::pi;

// Chebyshev polynomial of the second kind: U_l(cos t) = sin((l+1)t)/sin t.
double chebU(int l, double x) {
  double um = 1.0, uk = 2.0 * x;
  if (l == 0) return um;
  for (int i = 2; i <= l; ++i) {
    const double un = 2.0 * x * uk - um;
    um = uk;
    uk = un;
  }
  return uk;
}

Measure random_discrete(int d, std::mt19937_64& rng, int max_atoms = 5,
                        bool signed_weights = true) {
  std::uniform_real_distribution<double> coord(-0.6, 0.6);
  std::uniform_real_distribution<double> weight(signed_weights ? -1.0 : 0.2,
                                                1.0);
  std::uniform_int_distribution<int> count(1, max_atoms);
  measures::Discrete discrete;
  const int atoms = count(rng);
  for (int i = 0; i < atoms; ++i) {
    Point x{coord(rng), coord(rng), d == 3 ? coord(rng) : 0.0};
    discrete.atoms.emplace_back(x, weight(rng));
  }
  Measure mu;
  mu.d = d;
  mu.R = 1.0;
  mu.body = std::move(discrete);
  return mu;
}

}  // namespace

TEST_CASE("coefficient table of the disc measure") {
  const auto mu = *examples::builtin_example("ex0");
  const auto table = markov::coefficient_table(mu, 9);
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  for (int l = 0; l <= 9; ++l) {
    if (l % 2 == 1) {
      CHECK(table.f[l].coeffs.empty());
      continue;
    }
    for (int trial = 0; trial < 5; ++trial) {
      const Point theta = harmonics::unit2(uni(rng));
      CHECK(table.eval(l, theta) ==
            doctest::Approx(1.0 / (l + 2.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("coefficient table of the line measure matches the closed form") {
  const auto mu = *examples::builtin_example("prop6-lebesgue");
  const auto table = markov::coefficient_table(mu, 8);
  for (int l = 0; l <= 8; ++l) {
    for (int i = 0; i < 20; ++i) {
      const double t = 0.05 + (2.0 * kPi - 0.1) * i / 19.0;
      const double expected =
          (1.0 / (2.0 * kPi)) * (1.0 / (l + 1.0)) * chebU(l, std::cos(t));
      CHECK(table.eval(l, harmonics::unit2(t)) ==
            doctest::Approx(expected).epsilon(1e-10).scale(1e-3));
    }
  }
}

TEST_CASE("line measure in three dimensions") {
  // Independent oracle: for sigma on the +x axis of R^3, summing the
  // addition theorem over matching parities telescopes into the Legendre
  // derivative, f_l(theta) = m_l P'_{l+1}(<e1,theta>) / (4 pi).
  const auto mu = measures::parse_measure(
      R"({"d":3,"R":1,"variant":"radial_times_dirac",)"
      R"("radial":{"density":"lebesgue","interval":[0,1]}})");
  const auto table = markov::coefficient_table(mu, 6);
  const auto legendre_deriv = [](int k, double u) {
    // (1-u^2) P_k'(u) = k (P_{k-1}(u) - u P_k(u)); use the series fallback
    // via finite parity sum instead to stay exact at |u| = 1.
    double acc = 0.0;
    for (int j = k - 1; j >= 0; j -= 2)
      acc += (2.0 * j + 1.0) * harmonics::legendre(3, j, u);
    return acc;
  };
  for (int l = 0; l <= 6; ++l) {
    const double ml = 1.0 / (l + 1.0);
    for (int i = 0; i < 8; ++i) {
      const double polar = 0.2 + 0.35 * i, az = 0.9 * i;
      const Point theta = harmonics::unit3(polar, az);
      const double u = theta[0];
      const double expected = ml * legendre_deriv(l + 1, u) / (4.0 * kPi);
      CHECK(table.eval(l, theta) ==
            doctest::Approx(expected).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("zero measure yields the zero table") {
  Measure mu;
  mu.d = 2;
  mu.body = measures::Discrete{};
  const auto table = markov::coefficient_table(mu, 6);
  for (int l = 0; l <= 6; ++l) CHECK(table.f[l].coeffs.empty());
}

TEST_CASE("table parity structure") {
  std::mt19937_64 rng(53);
  for (int d : {2, 3}) {
    const auto mu = random_discrete(d, rng);
    const auto table = markov::coefficient_table(mu, 7);
    for (int l = 0; l <= 7; ++l)
      for (const auto& [km, c] : table.f[l].coeffs) {
        CHECK(km.first <= l);
        CHECK((l - km.first) % 2 == 0);
      }
  }
}

TEST_CASE("homogeneous lifts") {
  const auto mu = *examples::builtin_example("ex0");
  const auto table = markov::coefficient_table(mu, 4);
  const auto f0 = markov::homog_lift(table, 0);
  REQUIRE(f0.terms().size() == 1);
  CHECK(f0.terms().begin()->first == polyalg::TKM{0, 0, 1});

  const auto f2 = markov::homog_lift(table, 2);
  REQUIRE(f2.terms().size() == 1);
  CHECK(f2.terms().begin()->first == polyalg::TKM{1, 0, 1});
  CHECK(f2.terms().begin()->second ==
        doctest::Approx(std::sqrt(2.0 * kPi) / 4.0).epsilon(1e-12));

  std::mt19937_64 rng(59);
  const auto md = random_discrete(2, rng);
  const auto td = markov::coefficient_table(md, 5);
  const auto f3 = markov::homog_lift(td, 3);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 5; ++trial) {
    const Point theta = harmonics::unit2(uni(rng));
    Point x2 = theta;
    x2[0] *= 2.0;
    x2[1] *= 2.0;
    CHECK(polyalg::homog_eval(f3, x2) ==
          doctest::Approx(8.0 * td.eval(3, theta)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("series equals the distributed-moment double sum") {
  std::mt19937_64 rng(61);
  const auto mu = random_discrete(2, rng);
  const int L = 10;
  const auto table = markov::coefficient_table(mu, L);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
  const Point theta = harmonics::unit2(uni(rng));
  const Complex zeta(1.4, 0.7);

  Complex by_l = 0.0;
  for (int l = 0; l <= L; ++l)
    by_l += table.eval(l, theta) * std::pow(1.0 / zeta, l + 1);

  Complex by_skm = 0.0;
  for (int s = 0; 2 * s <= L; ++s)
    for (int k = 0; 2 * s + k <= L; ++k)
      for (int m = 1; m <= harmonics::harmonic_count(2, k); ++m)
        by_skm += measures::distributed_moment(mu, s, k, m) *
                  harmonics::eval_Y(2, k, m, theta) *
                  std::pow(zeta, -(2 * s + k + 1));
  CHECK(std::abs(by_l - by_skm) <= 1e-13 * (1.0 + std::abs(by_l)));

  // eval_series is the same sum in the kernel normalization.
  const auto sv = markov::eval_series(table, zeta, theta, L);
  CHECK(std::abs(sv.value - 2.0 * kPi * by_l) <=
        1e-13 * (1.0 + std::abs(sv.value)));
}

TEST_CASE("legendre form of the coefficient functions") {
  std::mt19937_64 rng(67);
  for (int d : {2, 3}) {
    const auto mu = random_discrete(d, rng);
    const auto& atoms = std::get<measures::Discrete>(mu.body).atoms;
    const auto table = markov::coefficient_table(mu, 6);
    const double area = harmonics::surface_area(d);
    for (int trial = 0; trial < 6; ++trial) {
      Point theta;
      if (d == 2) {
        theta = harmonics::unit2(2.1 * trial);
      } else {
        const double z = -1.0 + 2.0 * trial / 5.0;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        theta = Point{s * std::cos(1.7 * trial), s * std::sin(1.7 * trial), z};
      }
      for (int l = 0; l <= 6; ++l) {
        double expected = 0.0;
        for (int t = 0; 2 * t <= l; ++t) {
          const int k = l - 2 * t;
          double integral = 0.0;
          for (const auto& [x, w] : atoms) {
            const double r = harmonics::norm(x, d);
            if (r == 0.0) {
              if (l == 0) integral += w;
              continue;
            }
            Point xhat = x;
            for (int i = 0; i < d; ++i) xhat[i] /= r;
            integral += w * std::pow(r, l) *
                        harmonics::legendre(d, k,
                                            harmonics::dot(xhat, theta, d));
          }
          expected += harmonics::harmonic_count(d, k) / area * integral;
        }
        CHECK(table.eval(l, theta) ==
              doctest::Approx(expected).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("kernel evaluation closed forms") {
  Measure origin;
  origin.d = 2;
  origin.body = measures::Discrete{{{{0.0, 0.0, 0.0}, 1.0}}};
  const Complex zeta(1.3, -0.4);
  CHECK(std::abs(markov::eval_kernel(origin, zeta, harmonics::unit2(0.3)) -
                 1.0 / zeta) < 1e-15);

  Measure origin3;
  origin3.d = 3;
  origin3.body = measures::Discrete{{{{0.0, 0.0, 0.0}, 1.0}}};
  CHECK(std::abs(markov::eval_kernel(origin3, zeta,
                                     Point{0.0, 0.0, 1.0}) -
                 1.0 / zeta) < 1e-15);

  // d = 2, real zeta: w rho / (rho^2 - 2 rho <theta,x> + |x|^2).
  Measure one;
  one.d = 2;
  const Point x{0.3, -0.2, 0.0};
  one.body = measures::Discrete{{{x, 0.8}}};
  const double rho = 1.7;
  const Point theta = harmonics::unit2(2.4);
  const double denom = rho * rho - 2.0 * rho * harmonics::dot(theta, x, 2) +
                       harmonics::dot(x, x, 2);
  CHECK(markov::eval_kernel(one, rho, theta).real() ==
        doctest::Approx(0.8 * rho / denom).epsilon(1e-14));
  CHECK(std::abs(markov::eval_kernel(one, rho, theta).imag()) < 1e-15);

  CHECK_THROWS_AS(markov::eval_kernel(one, 0.1, theta), domain_error);
}

TEST_CASE("series agrees with the kernel within the tail bound") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto mu = random_discrete(d, rng);
      const auto table = markov::coefficient_table(mu, 40);
      const Complex zeta = std::polar(2.0, phase(rng));
      Point theta;
      if (d == 2) {
        theta = harmonics::unit2(phase(rng));
      } else {
        const double z = std::cos(phase(rng));
        const double s = std::sqrt(1.0 - z * z), az = phase(rng);
        theta = Point{s * std::cos(az), s * std::sin(az), z};
      }
      const auto sv = markov::eval_series(table, zeta, theta, 40);
      const Complex kv = markov::eval_kernel(mu, zeta, theta);
      CHECK(std::abs(sv.value - kv) <= sv.tail_bound + 1e-12);
    }
  }
}

TEST_CASE("series rejects points inside the support radius") {
  const auto mu = *examples::builtin_example("ex0");
  const auto table = markov::coefficient_table(mu, 4);
  CHECK_THROWS_AS(markov::eval_series(table, Complex(0.5, 0.0),
                                      harmonics::unit2(0.0), 4),
                  domain_error);
}

TEST_CASE("real transform") {
  Measure origin;
  origin.d = 2;
  origin.body = measures::Discrete{{{{0.0, 0.0, 0.0}, 1.0}}};
  CHECK(markov::eval_real(origin, Point{1.4, -0.8, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-14));

  Measure zero;
  zero.d = 2;
  zero.body = measures::Discrete{};
  CHECK(markov::eval_real(zero, Point{2.0, 0.0, 0.0}) == 0.0);

  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 10; ++trial) {
    const auto mu = random_discrete(2, rng);
    const auto table = markov::coefficient_table(mu, 40);
    const double rho = 2.0;
    const Point theta = harmonics::unit2(phase(rng));
    Point y = theta;
    y[0] *= rho;
    y[1] *= rho;
    const auto sv = markov::eval_series(table, rho, theta, 40);
    CHECK(markov::eval_real(mu, y) ==
          doctest::Approx(rho * sv.value.real())
              .epsilon(1e-10).scale(1.0));
  }

  // Quadrature route for the line measure.
  const auto prop6 = *examples::builtin_example("prop6-lebesgue");
  const auto table6 = markov::coefficient_table(prop6, 40);
  const Point theta = harmonics::unit2(0.9);
  Point y = theta;
  y[0] *= 2.0;
  y[1] *= 2.0;
  CHECK(markov::eval_real(prop6, y) ==
        doctest::Approx(2.0 *
                        markov::eval_series(table6, 2.0, theta, 40)
                            .value.real())
            .epsilon(1e-9));
}

TEST_CASE("hankel determinants of the degenerate example") {
  const auto mu = *examples::builtin_example("ex1-degenerate");
  const auto table = markov::coefficient_table(mu, 12);
  const Point flagged = harmonics::unit2(0.0);
  CHECK(std::abs(markov::hankel(table, flagged, 2)) < 1e-12);
  CHECK(markov::hankel(table, flagged, 1) ==
        doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  // Every f_l at the degenerate direction equals 1/(2 pi).
  for (int l = 0; l <= 6; ++l)
    CHECK(table.eval(l, flagged) ==
          doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("hankel polynomial homogeneity") {
  std::mt19937_64 rng(79);
  const auto mu = random_discrete(2, rng, 4, false);
  const auto table = markov::coefficient_table(mu, 6);
  const int n = 3;
  const auto hp = markov::hankel_poly(table, n);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 5; ++trial) {
    const Point theta = harmonics::unit2(phase(rng));
    const double h = markov::hankel(table, theta, n);
    // Real scaling by 2.
    Point x2 = theta;
    x2[0] *= 2.0;
    x2[1] *= 2.0;
    CHECK(polyalg::homog_eval(hp, x2) ==
          doctest::Approx(std::pow(2.0, n * (n - 1)) * h)
              .epsilon(1e-9).scale(1.0));
    // Complex scaling at |zeta| = 1.7.
    const Complex zeta = std::polar(1.7, phase(rng));
    const Complex lhs = polyalg::homog_eval_scaled(hp, zeta, theta);
    const Complex rhs = std::pow(zeta, n * (n - 1)) * h;
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("hankel positivity verdicts") {
  const auto polar = *examples::builtin_example("polar-positive");
  const auto tp = markov::coefficient_table(polar, 10);
  const auto good = markov::hankel_positivity_report(tp, 4, 12);
  CHECK(good.positive);

  const auto ex1 = *examples::builtin_example("ex1-degenerate");
  const auto t1 = markov::coefficient_table(ex1, 10);
  const auto bad = markov::hankel_positivity_report(t1, 3, 12);
  CHECK_FALSE(bad.positive);

  Measure zero;
  zero.d = 2;
  zero.body = measures::Discrete{};
  const auto tz = markov::coefficient_table(zero, 6);
  CHECK_FALSE(markov::hankel_positivity_report(tz, 2, 8).positive);
}

TEST_CASE("kronecker rationality test") {
  // k shells of positive radius have directional Hankel rank exactly 2k.
  for (int k : {1, 2, 3}) {
    std::vector<double> radii;
    for (int i = 0; i < k; ++i) radii.push_back(0.4 + 0.3 * i);
    const auto mu = examples::shell_measure(radii);
    const auto table = markov::coefficient_table(mu, 2 * (2 * k + 2));
    const auto result = markov::kronecker_test(table, 2 * k + 2, 1e-9);
    REQUIRE(result.rational);
    CHECK(*result.detected_degree == 2 * k);
  }

  const auto polar = *examples::builtin_example("polar-positive");
  const auto tp = markov::coefficient_table(polar, 12);
  CHECK_FALSE(markov::kronecker_test(tp, 6, 1e-9).rational);

  Measure zero;
  zero.d = 2;
  zero.body = measures::Discrete{};
  const auto tz = markov::coefficient_table(zero, 8);
  const auto rz = markov::kronecker_test(tz, 4, 1e-9);
  REQUIRE(rz.rational);
  CHECK(*rz.detected_degree == 0);
}

TEST_CASE("upper half plane sign check") {
  const auto shells = examples::shell_measure({0.4, 0.9});
  const auto table = markov::coefficient_table(shells, 40);
  const auto report = markov::upper_halfplane_sign_check(table, 40, 7);
  CHECK(report.violations == 0);

  const auto polar = *examples::builtin_example("polar-positive");
  const auto tp = markov::coefficient_table(polar, 40);
  CHECK(markov::upper_halfplane_sign_check(tp, 20, 11).violations == 0);
}

TEST_CASE("short tables are rejected") {
  const auto mu = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(mu, 5);
  CHECK_THROWS_AS(markov::hankel(table, harmonics::unit2(0.2), 4),
                  insufficient_moments_error);
  CHECK_THROWS_AS(markov::kronecker_test(table, 4),
                  insufficient_moments_error);
  CHECK_THROWS_AS(markov::hankel_poly(table, 4),
                  insufficient_moments_error);
  CHECK_THROWS_AS(polyalg::homog_eval_scaled(markov::homog_lift(table, 2),
                                             polyalg::Complex(1.0, 0.0),
                                             Point{0.5, 0.5, 0.0}),
                  domain_error);
}

TEST_CASE("csv round trips") {
  const auto polar = *examples::builtin_example("polar-positive");
  const auto table = markov::coefficient_table(polar, 6);
  const std::string csv = io::table_csv(table);
  const auto back = io::table_from_csv(csv, table.d, table.R);
  REQUIRE(back.L() == table.L());
  const Point theta = harmonics::unit2(1.1);
  for (int l = 0; l <= table.L(); ++l)
    CHECK(back.eval(l, theta) == doctest::Approx(table.eval(l, theta)));

  const auto dm = markov::directional_moments(table, theta);
  const auto seq = io::moments_from_csv(io::moments_csv(dm.values));
  REQUIRE(seq.size() == dm.values.size());
  for (std::size_t l = 0; l < seq.size(); ++l)
    CHECK(seq.values[l] == dm.values.values[l]);
}
