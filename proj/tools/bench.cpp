// Timing harness comparing the serial reference kernels against the OpenMP
// paths on scaled-up workloads.  Results must match exactly; the serial
// column is the reference implementation used by the test suite.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "mmt/cubature.hpp"
#include "mmt/examples.hpp"
#include "mmt/parallel.hpp"

using namespace mmt;

namespace {

double time_once(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void row(const std::string& name, double serial, double parallel, bool equal) {
  std::printf("%-34s %9.3f s %9.3f s %7.2fx   %s\n", name.c_str(), serial,
              parallel, serial / parallel, equal ? "identical" : "DIFFER");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", max_threads());
  std::printf("%-34s %11s %11s %9s\n", "kernel", "serial", "openmp",
              "speedup");

  const auto mu = *examples::builtin_example("polar-positive");

  {
    markov::CoefficientTable ts, tp;
    const double a =
        time_once([&] { ts = markov::coefficient_table(mu, 160, Exec::serial); });
    const double b =
        time_once([&] { tp = markov::coefficient_table(mu, 160, Exec::par); });
    bool equal = ts.L() == tp.L();
    for (int l = 0; equal && l <= ts.L(); ++l)
      equal = ts.f[l].coeffs == tp.f[l].coeffs;
    row("coefficient_table L=160", a, b, equal);
  }

  const auto table = markov::coefficient_table(mu, 16, Exec::par);
  {
    cubature::CubatureRule rs, rp;
    const double a = time_once(
        [&] { rs = cubature::build_cubature(table, 4, 1200, false, Exec::serial); });
    const double b = time_once(
        [&] { rp = cubature::build_cubature(table, 4, 1200, false, Exec::par); });
    bool equal = rs.points.size() == rp.points.size();
    for (std::size_t i = 0; equal && i < rs.points.size(); ++i)
      equal = rs.points[i].weight == rp.points[i].weight;
    row("build_cubature degree 1200", a, b, equal);

    const auto u = polyalg::from_monomials(
        2, {{{4, 2, 0}, 0.3}, {{1, 5, 0}, -0.7}, {{0, 2, 0}, 1.1}});
    double va = 0.0, vb = 0.0;
    const double c = time_once([&] {
      for (int rep = 0; rep < 50; ++rep) va = cubature::apply(rs, u, Exec::serial);
    });
    const double d = time_once([&] {
      for (int rep = 0; rep < 50; ++rep) vb = cubature::apply(rs, u, Exec::par);
    });
    row("apply x50 on 4800 points", c, d, va == vb);
  }

  {
    const auto rule = cubature::build_cubature(table, 3, -1, false, Exec::par);
    cubature::PositivityCheckReport ps, pp;
    const double a = time_once([&] {
      ps = cubature::positivity_check(rule, table, 4000, 7, Exec::serial);
    });
    const double b = time_once([&] {
      pp = cubature::positivity_check(rule, table, 4000, 7, Exec::par);
    });
    row("positivity_check 4000 trials", a, b,
        ps.worst == pp.worst && ps.vanishing_rel == pp.vanishing_rel);
  }

  {
    markov::PositivityReport hs, hp;
    const double a = time_once([&] {
      hs = markov::hankel_positivity_report(table, 6, 800, 1e-10, Exec::serial);
    });
    const double b = time_once([&] {
      hp = markov::hankel_positivity_report(table, 6, 800, 1e-10, Exec::par);
    });
    row("hankel positivity degree 800", a, b,
        hs.min_value == hp.min_value && hs.positive == hp.positive);
  }
  return 0;
}
