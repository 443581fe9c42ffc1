// Command-line front end: moments, hankel, pade, rationality, cubature and
// the canned reproduce experiments.  Exit codes: 0 success, 1 verification
// failure, 2 usage or schema error.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmt/cubature.hpp"
#include "mmt/errors.hpp"
#include "mmt/examples.hpp"
#include "mmt/io.hpp"

using namespace mmt;
using harmonics::Point;
using polyalg::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
  std::string input;
  std::string example;
  int n = 3;
  int L = -1;  // default derived from n
  int sphere_degree = -1;
  double tol = -1.0;  // command-specific default
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 20240501;
  bool serial = false;
  int d = 2;      // for CSV table input
  double R = 1.0; // for CSV table input

  Exec exec() const { return serial ? Exec::serial : Exec::par; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open input file", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const RunConfig& config, const std::string& text) {
  if (config.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(config.out);
  if (!out) throw schema_error("cannot open output file", config.out);
  out << text;
}

/// Loads the coefficient table from a measure (JSON or builtin example) or
/// from a raw moment CSV, which is treated as direction-independent.
struct LoadedInput {
  std::optional<measures::Measure> measure;
  markov::CoefficientTable table;
};

LoadedInput load_input(const RunConfig& config, int L) {
  LoadedInput loaded;
  if (!config.example.empty()) {
    const auto mu = examples::builtin_example(config.example);
    if (!mu) {
      std::string names;
      for (const auto& name : examples::builtin_names()) names += " " + name;
      throw schema_error("unknown example '" + config.example +
                             "'; available:" + names,
                         "--example");
    }
    loaded.measure = *mu;
    loaded.table = markov::coefficient_table(*mu, L, config.exec());
    loaded.table.provenance = config.example;
    return loaded;
  }
  if (config.input.empty())
    throw schema_error("either --input or --example is required", "--input");
  const std::string text = read_file(config.input);
  if (config.input.size() > 4 &&
      config.input.substr(config.input.size() - 4) == ".csv") {
    // Raw moment stream: one synthetic direction-independent table.
    const auto seq = io::moments_from_csv(text);
    loaded.table.d = config.d;
    loaded.table.R = config.R;
    loaded.table.provenance = config.input;
    loaded.table.tv_bound = 0.0;  // no measure model, no tail bound
    for (double v : seq.values) {
      markov::HarmonicExpansion fl{config.d, {}};
      fl.coeffs[{0, 1}] = v * std::sqrt(harmonics::surface_area(config.d));
      loaded.table.f.push_back(fl);
    }
    return loaded;
  }
  loaded.measure = measures::parse_measure(text);
  loaded.table =
      markov::coefficient_table(*loaded.measure, L, config.exec());
  loaded.table.provenance = config.input;
  return loaded;
}

std::string theta_columns(int d) {
  return d == 2 ? "theta_x,theta_y" : "theta_x,theta_y,theta_z";
}

std::string theta_values(const Point& theta, int d) {
  std::string out = io::format_double(theta[0]) + "," +
                    io::format_double(theta[1]);
  if (d == 3) out += "," + io::format_double(theta[2]);
  return out;
}

int cmd_moments(const RunConfig& config) {
  const int L = config.L >= 0 ? config.L : 8;
  const auto loaded = load_input(config, L);
  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["d"] = loaded.table.d;
    j["R"] = loaded.table.R;
    j["L"] = loaded.table.L();
    j["provenance"] = loaded.table.provenance;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int l = 0; l <= loaded.table.L(); ++l)
      for (const auto& [km, c] : loaded.table.f[l].coeffs)
        rows.push_back({{"l", l},
                        {"k", km.first},
                        {"m", km.second},
                        {"coefficient", c}});
    j["coefficients"] = rows;
    write_output(config, j.dump(2) + "\n");
  } else {
    write_output(config, io::table_csv(loaded.table));
  }
  return 0;
}

int cmd_hankel(const RunConfig& config) {
  const int N = config.n;
  const int L = config.L >= 0 ? config.L : std::max(2 * N, 8);
  const int degree =
      config.sphere_degree >= 0 ? config.sphere_degree : 2 * N + 6;
  const double tol = config.tol > 0.0 ? config.tol : 1e-10;
  const auto loaded = load_input(config, L);
  const auto report = markov::hankel_positivity_report(loaded.table, N,
                                                       degree, tol,
                                                       config.exec());
  const auto rule = harmonics::sphere_rule(loaded.table.d, degree);
  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["orders"] = N;
    j["positive"] = report.positive;
    j["tol"] = report.tol;
    j["scale"] = report.scale;
    j["min_per_order"] = report.min_per_order;
    nlohmann::ordered_json witness = nlohmann::ordered_json::array();
    for (int i = 0; i < loaded.table.d; ++i)
      witness.push_back(report.witness[i]);
    j["witness"] = witness;
    write_output(config, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "n," << theta_columns(loaded.table.d) << ",hankel\n";
    for (int n = 1; n <= N; ++n)
      for (const auto& node : rule.nodes)
        out << n << ',' << theta_values(node, loaded.table.d) << ','
            << io::format_double(markov::hankel(loaded.table, node, n))
            << '\n';
    out << "# verdict," << (report.positive ? "positive" : "not-positive")
        << '\n';
    write_output(config, out.str());
  }
  return 0;
}

int cmd_pade(const RunConfig& config) {
  const int n = config.n;
  const int L = config.L >= 0 ? config.L : std::max(2 * n, 8);
  const int degree =
      config.sphere_degree >= 0 ? config.sphere_degree : 2 * n + 4;
  const auto loaded = load_input(config, L);
  const auto grid = harmonics::sphere_rule(loaded.table.d, degree);

  std::ostringstream csv;
  csv << "direction," << theta_columns(loaded.table.d)
      << ",normal,kind,index,value\n";
  nlohmann::ordered_json directions = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto dm = markov::directional_moments(loaded.table, grid.nodes[j]);
    nlohmann::ordered_json dj;
    try {
      const auto pair = pade::pade_pair(dm, n, pade::Method::linear_solve);
      dj["normal"] = pair.normal;
      dj["hankel"] = pair.hankel;
      std::vector<double> den, num, rem;
      for (int i = 0; i <= pair.den.degree(); ++i)
        den.push_back(pair.den.coeff(i).real());
      for (int i = 0; i <= pair.num.degree(); ++i)
        num.push_back(pair.num.coeff(i).real());
      for (const auto& h : pair.remainder_head) rem.push_back(std::abs(h));
      dj["den"] = den;
      dj["num"] = num;
      dj["remainder_head"] = rem;
      for (std::size_t i = 0; i < den.size(); ++i)
        csv << j << ',' << theta_values(grid.nodes[j], loaded.table.d) << ','
            << pair.normal << ",den," << i << ',' << io::format_double(den[i])
            << '\n';
      for (std::size_t i = 0; i < num.size(); ++i)
        csv << j << ',' << theta_values(grid.nodes[j], loaded.table.d) << ','
            << pair.normal << ",num," << i << ',' << io::format_double(num[i])
            << '\n';
      for (std::size_t i = 0; i < rem.size(); ++i)
        csv << j << ',' << theta_values(grid.nodes[j], loaded.table.d) << ','
            << pair.normal << ",remainder," << i << ','
            << io::format_double(rem[i]) << '\n';
    } catch (const degenerate_pair_error& e) {
      dj["degenerate"] = true;
      dj["error"] = e.what();
      csv << j << ',' << theta_values(grid.nodes[j], loaded.table.d)
          << ",0,degenerate,0,nan\n";
    }
    nlohmann::ordered_json theta = nlohmann::ordered_json::array();
    for (int i = 0; i < loaded.table.d; ++i)
      theta.push_back(grid.nodes[j][i]);
    dj["theta"] = theta;
    directions.push_back(dj);
  }
  if (config.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["directions"] = directions;
    write_output(config, j.dump(2) + "\n");
  } else {
    write_output(config, csv.str());
  }
  return 0;
}

int cmd_rationality(const RunConfig& config) {
  const int n_max = config.n;
  const int L = config.L >= 0 ? config.L : 4 * n_max;
  const double tol = config.tol > 0.0 ? config.tol : 1e-8;
  const auto loaded = load_input(config, std::max(L, 2 * n_max));
  const auto result =
      markov::kronecker_test(loaded.table, n_max, tol, config.exec());
  nlohmann::ordered_json j;
  j["rational"] = result.rational;
  if (result.detected_degree) j["detected_degree"] = *result.detected_degree;
  j["tol"] = result.tol;
  j["scale"] = result.scale;
  j["max_per_order"] = result.max_per_order;
  write_output(config, j.dump(2) + "\n");
  return 0;
}

int cmd_cubature(const RunConfig& config) {
  const int n = config.n;
  const int L = config.L >= 0 ? config.L : std::max(2 * n, 8);
  const auto loaded = load_input(config, L);
  const auto rule = cubature::build_cubature(
      loaded.table, n, config.sphere_degree, false, config.exec());
  if (config.format == "csv") {
    write_output(config, io::rule_csv(rule));
    return 0;
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(io::rule_json(rule));
  if (loaded.measure) {
    const auto exact =
        cubature::exactness_report(rule, *loaded.measure, n, config.exec());
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : exact.rows)
      rows.push_back({{"t", row.key.t},
                      {"k", row.key.k},
                      {"m", row.key.m},
                      {"guaranteed", row.guaranteed},
                      {"cubature", row.cubature},
                      {"exact", row.exact},
                      {"rel_error", row.rel_error}});
    j["exactness"] = {{"max_rel_error", exact.max_rel_error},
                      {"rows", rows}};
  }
  const auto positivity = cubature::positivity_check(
      rule, loaded.table, 100, config.seed, config.exec());
  j["positivity"] = {{"trials", positivity.trials},
                     {"violations", positivity.violations},
                     {"worst", positivity.worst},
                     {"lift_checked", positivity.lift_checked},
                     {"vanishing_rel", positivity.vanishing_rel}};
  write_output(config, j.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce: canned experiments with their assertions.

int reproduce_failures = 0;

void check(bool ok, const std::string& label, const std::string& detail) {
  std::printf("  [%s] %s (%s)\n", ok ? "ok" : "fail", label.c_str(),
              detail.c_str());
  if (!ok) ++reproduce_failures;
}

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

void reproduce_ex0(const RunConfig& config) {
  const auto mu = *examples::builtin_example("ex0");
  const auto table = markov::coefficient_table(mu, 40, config.exec());
  bool odd = true;
  double even = 0.0;
  for (int l = 0; l <= 12; ++l) {
    if (l % 2 == 1) {
      odd = odd && table.f[l].coeffs.empty();
      continue;
    }
    for (int i = 0; i < 8; ++i)
      even = std::max(even,
                      std::abs(table.eval(l, harmonics::unit2(0.7 * i)) -
                               1.0 / (l + 2.0)));
  }
  check(odd, "odd coefficient functions vanish identically", "structural");
  check(even <= 1e-12, "f_2l = 1/(2l+2) independent of direction",
        "max err " + io::format_double(even));
  double series_err = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex zeta = std::polar(2.0, 0.2 + 0.55 * i);
    const Complex got =
        markov::eval_series(table, zeta, harmonics::unit2(0.3 * i), 40).value;
    const Complex exact(
        measures::integrate_function(
            mu,
            [&](const Point& x) {
              return (zeta / (zeta * zeta - x[0] * x[0] - x[1] * x[1]))
                  .real();
            },
            1e-12),
        measures::integrate_function(
            mu,
            [&](const Point& x) {
              return (zeta / (zeta * zeta - x[0] * x[0] - x[1] * x[1]))
                  .imag();
            },
            1e-12));
    series_err =
        std::max(series_err, std::abs(got - exact) / std::abs(exact));
  }
  check(series_err <= 1e-10, "series matches the rotation-invariant integral",
        "max rel err " + io::format_double(series_err));
}

void reproduce_prop6(const RunConfig& config) {
  const auto mu = *examples::builtin_example("prop6-lebesgue");
  const auto table = markov::coefficient_table(mu, 8, config.exec());
  double worst = 0.0;
  for (int l = 0; l <= 8; ++l)
    for (int i = 0; i < 20; ++i) {
      const double t = 0.07 + (2.0 * kPi - 0.14) * i / 19.0;
      const double expected =
          (1.0 / (2.0 * kPi)) / (l + 1.0) * chebU(l, std::cos(t));
      worst = std::max(worst,
                       std::abs(table.eval(l, harmonics::unit2(t)) -
                                expected) /
                           std::max(std::abs(expected), 1e-6));
    }
  check(worst <= 1e-10, "f_l(e^it) = (1/w2) (1/(l+1)) sin((l+1)t)/sin t",
        "max rel err " + io::format_double(worst));
}

void reproduce_ex1(const RunConfig& config) {
  const auto mu = *examples::builtin_example("ex1-degenerate");
  const auto table = markov::coefficient_table(mu, 12, config.exec());
  const Point flagged = harmonics::unit2(0.0);
  double unit_err = 0.0;
  for (int l = 0; l <= 6; ++l)
    unit_err = std::max(unit_err, std::abs(2.0 * kPi *
                                               table.eval(l, flagged) -
                                           1.0));
  check(unit_err <= 1e-12,
        "w2 * f_l = 1 at the degenerate direction (flagged +x axis)",
        "max err " + io::format_double(unit_err));
  const double h2 = std::abs(markov::hankel(table, flagged, 2));
  check(h2 <= 1e-12, "H_2 vanishes there", io::format_double(h2));
  bool raised = false;
  try {
    pade::pade_pair(markov::directional_moments(table, flagged), 2,
                    pade::Method::determinant);
  } catch (const degenerate_pair_error&) {
    raised = true;
  }
  check(raised, "determinant pair of order 2 degenerates", "error raised");
}

void reproduce_polar(const RunConfig& config) {
  const auto mu = *examples::builtin_example("polar-positive");
  const int n = config.n;
  const auto table =
      markov::coefficient_table(mu, std::max(16, 2 * n), config.exec());
  const auto rule = cubature::build_cubature(table, n, -1, false,
                                             config.exec());
  const auto exact = cubature::exactness_report(rule, mu, n, config.exec());
  check(exact.max_rel_error <= 1e-8, "exactness on degree <= 2n-1",
        "max rel err " + io::format_double(exact.max_rel_error));
  const auto pos =
      cubature::positivity_check(rule, table, 100, config.seed, config.exec());
  check(pos.violations == 0 && pos.worst >= -1e-10,
        "no negative squares over 100 seeded trials",
        "worst " + io::format_double(pos.worst));
  if (pos.lift_checked)
    check(pos.vanishing_rel <= 1e-8, "T(+-A_n p^2) vanishes",
          io::format_double(pos.vanishing_rel));
  const auto kron = markov::kronecker_test(table, 6, 1e-9, config.exec());
  check(!kron.rational, "transform is not rational up to order 6",
        "max residual " +
            io::format_double(kron.max_per_order.back()));
  const auto half = markov::upper_halfplane_sign_check(table, 20, config.seed);
  check(half.violations == 0, "Im of the transform <= 0 on upper samples",
        std::to_string(half.samples) + " samples");
}

void reproduce_rotation(const RunConfig& config) {
  for (int k : {1, 2, 3}) {
    std::vector<double> radii;
    for (int i = 0; i < k; ++i) radii.push_back(1.0 - 0.3 * (k - 1 - i));
    const auto mu = examples::shell_measure(radii);
    const int n_max = 2 * k + 2;
    const auto table =
        markov::coefficient_table(mu, 2 * n_max, config.exec());
    const auto result =
        markov::kronecker_test(table, n_max, 1e-9, config.exec());
    check(result.rational && result.detected_degree &&
              *result.detected_degree == 2 * k,
          "k = " + std::to_string(k) + " shells detected rational of degree " +
              std::to_string(2 * k),
          result.detected_degree
              ? "degree " + std::to_string(*result.detected_degree)
              : "none");
  }
  // The transform of a rotation-invariant measure does not depend on theta.
  const auto mu = *examples::builtin_example("rotation-invariant");
  const auto table = markov::coefficient_table(mu, 20, config.exec());
  double spread = 0.0;
  const Complex zeta(2.1, 0.6);
  const Complex base =
      markov::eval_series(table, zeta, harmonics::unit2(0.0), 20).value;
  for (int i = 1; i < 12; ++i)
    spread = std::max(
        spread,
        std::abs(markov::eval_series(table, zeta,
                                     harmonics::unit2(2.0 * kPi * i / 12.0),
                                     20)
                     .value -
                 base));
  check(spread <= 1e-12 * std::abs(base),
        "transform is direction-independent",
        "spread " + io::format_double(spread));
}

int cmd_reproduce(const std::string& name, const RunConfig& config) {
  reproduce_failures = 0;
  std::printf("reproduce %s\n", name.c_str());
  if (name == "ex0") {
    reproduce_ex0(config);
  } else if (name == "prop6-lebesgue") {
    reproduce_prop6(config);
  } else if (name == "ex1-degenerate") {
    reproduce_ex1(config);
  } else if (name == "polar-positive") {
    reproduce_polar(config);
  } else if (name == "rotation-invariant") {
    reproduce_rotation(config);
  } else {
    std::string names;
    for (const auto& n : examples::builtin_names()) names += " " + n;
    throw schema_error("unknown experiment '" + name + "'; available:" + names,
                       "reproduce");
  }
  return reproduce_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Markov transform toolkit: asymptotic coefficients, directional "
      "Hankel determinants, Pade pairs, rationality tests and Gauss-type "
      "cubature for measures on a ball"};
  app.require_subcommand(1);
  RunConfig config;

  const auto add_common = [&](CLI::App* cmd, bool with_input = true) {
    if (with_input) {
      cmd->add_option("--input", config.input,
                      "measure JSON file or moment CSV");
      cmd->add_option("--example", config.example, "built-in example name");
      cmd->add_option("--dim", config.d, "dimension for CSV moment input");
      cmd->add_option("--R", config.R, "support radius for CSV moment input");
    }
    cmd->add_option("--n", config.n, "order");
    cmd->add_option("--L", config.L, "table length");
    cmd->add_option("--sphere-degree", config.sphere_degree,
                    "sphere grid exactness degree");
    cmd->add_option("--tol", config.tol, "tolerance override");
    cmd->add_option("--format", config.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", config.out, "output path (default stdout)");
    cmd->add_option("--seed", config.seed, "seed for randomized checks");
    cmd->add_flag("--serial", config.serial, "disable OpenMP parallelism");
  };

  auto* moments = app.add_subcommand(
      "moments", "coefficient table of the asymptotic expansion");
  add_common(moments);
  auto* hankel = app.add_subcommand(
      "hankel", "directional Hankel determinants and positivity verdict");
  add_common(hankel);
  auto* pade_cmd =
      app.add_subcommand("pade", "direction-parametrized Pade pairs");
  add_common(pade_cmd);
  auto* rationality = app.add_subcommand(
      "rationality", "numerical Kronecker rationality verdict");
  add_common(rationality);
  auto* cub =
      app.add_subcommand("cubature", "Gauss-type cubature rule and reports");
  add_common(cub);
  auto* reproduce = app.add_subcommand(
      "reproduce", "run a canned experiment and verify its assertions");
  std::string experiment;
  reproduce->add_option("name", experiment, "experiment name")->required();
  add_common(reproduce, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (config.n < 1) {
    std::fprintf(stderr, "error: --n must be >= 1\n");
    return 2;
  }
  if (config.L >= 0 && config.L < 2 * config.n) {
    std::fprintf(stderr, "error: --L must be at least 2n\n");
    return 2;
  }
  if (config.tol != -1.0 && config.tol <= 0.0) {
    std::fprintf(stderr, "error: --tol must be positive\n");
    return 2;
  }

  try {
    if (*moments) return cmd_moments(config);
    if (*hankel) return cmd_hankel(config);
    if (*pade_cmd) return cmd_pade(config);
    if (*rationality) return cmd_rationality(config);
    if (*cub) return cmd_cubature(config);
    if (*reproduce) return cmd_reproduce(experiment, config);
  } catch (const schema_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const mmt::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
