#include "mmt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "mmt/errors.hpp"

namespace mmt::measures {

namespace {
constexpr double kPi = std::numbers::pi;
using json = nlohmann::ordered_json;
}

double RadialDensity::operator()(double r) const {
  if (name == "lebesgue") return 1.0;
  if (name == "power") return std::pow(r, exponent);
  if (name == "custom") {
    if (!custom) throw error("RadialDensity: custom density not set");
    return custom(r);
  }
  if (name == "table") {
    if (table.empty()) return 0.0;
    if (r <= table.front().first) return table.front().second;
    if (r >= table.back().first) return table.back().second;
    auto hi = std::upper_bound(
        table.begin(), table.end(), r,
        [](double v, const auto& row) { return v < row.first; });
    auto lo = hi - 1;
    const double span = hi->first - lo->first;
    if (span <= 0.0) return lo->second;
    const double u = (r - lo->first) / span;
    return lo->second + u * (hi->second - lo->second);
  }
  throw error("RadialDensity: unknown density name '" + name + "'");
}

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol) {
  if (a == b) return 0.0;
  std::vector<double> nodes, weights;
  double prev = 0.0;
  bool have_prev = false;
  for (int n = 8; n <= 4096; n *= 2) {
    harmonics::gauss_legendre(n, nodes, weights);
    double acc = 0.0, max_f = 0.0;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
      const double v = f(mid + half * nodes[i]);
      max_f = std::max(max_f, std::abs(v));
      acc += weights[i] * v;
    }
    acc *= half;
    if (have_prev) {
      const double floor = 1e-14 * std::abs(b - a) * max_f;
      if (std::abs(acc - prev) <= std::max(rel_tol * std::abs(acc), floor))
        return acc;
    }
    prev = acc;
    have_prev = true;
  }
  throw quadrature_error("adaptive_integrate: no convergence by 4096 nodes");
}

double radial_moment(const RadialMeasure& sigma, int p) {
  if (const auto* atoms = std::get_if<RadialAtoms>(&sigma)) {
    double acc = 0.0;
    for (const auto& [r, w] : atoms->atoms) acc += w * std::pow(r, p);
    return acc;
  }
  const auto& density = std::get<RadialDensity>(sigma);
  return adaptive_integrate(
      [&](double r) { return density(r) * std::pow(r, p); }, density.a,
      density.b);
}

namespace {

double radial_abs_mass(const RadialMeasure& sigma) {
  if (const auto* atoms = std::get_if<RadialAtoms>(&sigma)) {
    double acc = 0.0;
    for (const auto& [r, w] : atoms->atoms) acc += std::abs(w);
    return acc;
  }
  const auto& density = std::get<RadialDensity>(sigma);
  return adaptive_integrate([&](double r) { return std::abs(density(r)); },
                            density.a, density.b, 1e-10);
}

void validate_radial(const RadialMeasure& sigma, double R) {
  if (const auto* atoms = std::get_if<RadialAtoms>(&sigma)) {
    for (const auto& [r, w] : atoms->atoms)
      if (r < 0.0 || r > R)
        throw error("radial atom outside [0, R]");
    return;
  }
  const auto& density = std::get<RadialDensity>(sigma);
  if (density.a < 0.0 || density.b > R || density.a > density.b)
    throw error("radial density interval not inside [0, R]");
}

}  // namespace

void validate(const Measure& mu) {
  if (mu.d != 2 && mu.d != 3) throw error("measure: d must be 2 or 3");
  if (!(mu.R > 0.0)) throw error("measure: R must be positive");
  if (const auto* discrete = std::get_if<Discrete>(&mu.body)) {
    for (const auto& [x, w] : discrete->atoms)
      if (harmonics::norm(x, mu.d) > mu.R * (1.0 + 1e-12))
        throw error("discrete atom outside the support ball");
  } else if (const auto* rp = std::get_if<RadialProduct>(&mu.body)) {
    validate_radial(rp->radial, mu.R);
  } else if (const auto* rd = std::get_if<RadialTimesDirac>(&mu.body)) {
    validate_radial(rd->radial, mu.R);
  } else if (const auto* polar = std::get_if<PolarDensity>(&mu.body)) {
    if (mu.d != 2) throw error("polar_density requires d = 2");
    if (polar->w0.a != polar->w1.a || polar->w0.b != polar->w1.b)
      throw error("polar_density: w0 and w1 must share an interval");
    if (polar->w0.b > mu.R) throw error("polar_density interval exceeds R");
    if (polar->assert_hankel_positive) {
      const double a = polar->w0.a, b = polar->w0.b;
      for (int i = 0; i <= 100; ++i) {
        const double r = a + (b - a) * i / 100.0;
        if (std::abs(polar->w1(r)) > polar->w0(r) + 1e-12)
          throw error("polar_density: |w1| <= w0 fails at r = " +
                      std::to_string(r));
      }
    }
  }
}

double distributed_moment(const Measure& mu, int s, int k, int m) {
  const int d = mu.d;
  if (s < 0 || k < 0 || m < 1 || m > harmonics::harmonic_count(d, k))
    throw error("distributed_moment: invalid (s,k,m)");
  const double root_area = std::sqrt(harmonics::surface_area(d));

  if (const auto* discrete = std::get_if<Discrete>(&mu.body)) {
    double acc = 0.0;
    for (const auto& [x, w] : discrete->atoms) {
      const double r = harmonics::norm(x, d);
      if (r == 0.0) {
        if (s == 0 && k == 0) acc += w / root_area;
        continue;
      }
      Point theta = x;
      for (int i = 0; i < d; ++i) theta[i] /= r;
      acc += w * std::pow(r, 2 * s + k) * harmonics::eval_Y(d, k, m, theta);
    }
    return acc;
  }

  if (const auto* rp = std::get_if<RadialProduct>(&mu.body)) {
    // Y_{k,m} integrates to zero against the uniform angular factor.
    if (k > 0) return 0.0;
    return root_area * radial_moment(rp->radial, 2 * s);
  }

  if (const auto* rd = std::get_if<RadialTimesDirac>(&mu.body)) {
    const Point e1{1.0, 0.0, 0.0};
    const double y = harmonics::eval_Y(d, k, m, e1);
    if (y == 0.0) return 0.0;
    return radial_moment(rd->radial, 2 * s + k) * y;
  }

  const auto& polar = std::get<PolarDensity>(mu.body);
  // Only the constant and the cos component of the angular factor survive.
  if (k == 0) {
    return std::sqrt(2.0 * kPi) *
           adaptive_integrate(
               [&](double r) { return polar.w0(r) * std::pow(r, 2 * s + 1); },
               polar.w0.a, polar.w0.b);
  }
  if (k == 1 && m == 1) {
    return std::sqrt(kPi) *
           adaptive_integrate(
               [&](double r) { return polar.w1(r) * std::pow(r, 2 * s + 2); },
               polar.w1.a, polar.w1.b);
  }
  return 0.0;
}

double integrate_poly(const Measure& mu, const polyalg::GaussPoly& u) {
  if (!u.empty() && u.dim() != mu.d)
    throw error("integrate_poly: dimension mismatch");
  double acc = 0.0;
  for (const auto& [key, c] : u.terms())
    acc += c * distributed_moment(mu, key.t, key.k, key.m);
  return acc;
}

double integrate_poly(const Measure& mu,
                      const std::vector<polyalg::Monomial>& u) {
  return integrate_poly(mu, polyalg::from_monomials(mu.d, u));
}

double total_variation_bound(const Measure& mu) {
  if (const auto* discrete = std::get_if<Discrete>(&mu.body)) {
    double acc = 0.0;
    for (const auto& [x, w] : discrete->atoms) acc += std::abs(w);
    return acc;
  }
  if (const auto* rp = std::get_if<RadialProduct>(&mu.body))
    return harmonics::surface_area(mu.d) * radial_abs_mass(rp->radial);
  if (const auto* rd = std::get_if<RadialTimesDirac>(&mu.body))
    return radial_abs_mass(rd->radial);
  const auto& polar = std::get<PolarDensity>(mu.body);
  return 2.0 * kPi *
         adaptive_integrate(
             [&](double r) {
               return (polar.w0(r) + std::abs(polar.w1(r))) * r;
             },
             polar.w0.a, polar.w0.b, 1e-10);
}

double integrate_function(const Measure& mu,
                          const std::function<double(const Point&)>& fn,
                          double rel_tol) {
  if (const auto* discrete = std::get_if<Discrete>(&mu.body)) {
    double acc = 0.0;
    for (const auto& [x, w] : discrete->atoms) acc += w * fn(x);
    return acc;
  }
  if (const auto* rd = std::get_if<RadialTimesDirac>(&mu.body)) {
    const auto eval_line = [&](double r) {
      return fn(Point{r, 0.0, 0.0});
    };
    if (const auto* atoms = std::get_if<RadialAtoms>(&rd->radial)) {
      double acc = 0.0;
      for (const auto& [r, w] : atoms->atoms) acc += w * eval_line(r);
      return acc;
    }
    const auto& density = std::get<RadialDensity>(rd->radial);
    return adaptive_integrate(
        [&](double r) { return density(r) * eval_line(r); }, density.a,
        density.b, rel_tol);
  }
  if (const auto* rp = std::get_if<RadialProduct>(&mu.body)) {
    // Angular refinement wrapped around the radial quadrature.
    double prev = 0.0;
    bool have_prev = false;
    for (int deg = 16; deg <= 512; deg *= 2) {
      const auto rule = harmonics::sphere_rule(mu.d, deg);
      const auto shell = [&](double r) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          Point x = rule.nodes[q];
          for (int i = 0; i < mu.d; ++i) x[i] *= r;
          acc += rule.weights[q] * fn(x);
        }
        return acc;
      };
      double val;
      if (const auto* atoms = std::get_if<RadialAtoms>(&rp->radial)) {
        val = 0.0;
        for (const auto& [r, w] : atoms->atoms) val += w * shell(r);
      } else {
        const auto& density = std::get<RadialDensity>(rp->radial);
        val = adaptive_integrate(
            [&](double r) { return density(r) * shell(r); }, density.a,
            density.b, rel_tol);
      }
      if (have_prev &&
          std::abs(val - prev) <= rel_tol * std::max(std::abs(val), 1e-300))
        return val;
      prev = val;
      have_prev = true;
    }
    throw quadrature_error("integrate_function: angular refinement stalled");
  }
  const auto& polar = std::get<PolarDensity>(mu.body);
  double prev = 0.0;
  bool have_prev = false;
  for (int M = 32; M <= 2048; M *= 2) {
    double val = 0.0;
    for (int jj = 0; jj < M; ++jj) {
      const double v = 2.0 * kPi * jj / M;
      const double c = std::cos(v), s = std::sin(v);
      val += (2.0 * kPi / M) *
             adaptive_integrate(
                 [&](double r) {
                   return (polar.w0(r) + polar.w1(r) * c) * r *
                          fn(Point{r * c, r * s, 0.0});
                 },
                 polar.w0.a, polar.w0.b, rel_tol);
    }
    if (have_prev &&
        std::abs(val - prev) <= rel_tol * std::max(std::abs(val), 1e-300))
      return val;
    prev = val;
    have_prev = true;
  }
  throw quadrature_error("integrate_function: angular refinement stalled");
}

namespace {

json emit_radial_density(const RadialDensity& density) {
  if (density.name == "custom")
    throw schema_error("custom densities cannot be serialized", "density");
  json j;
  j["density"] = density.name;
  j["interval"] = {density.a, density.b};
  if (density.name == "power") j["exponent"] = density.exponent;
  if (density.name == "table") {
    json pts = json::array();
    for (const auto& [r, v] : density.table) pts.push_back({r, v});
    j["points"] = pts;
  }
  return j;
}

RadialDensity parse_radial_density(const json& j, const std::string& path) {
  RadialDensity density;
  density.name = j.at("density").get<std::string>();
  if (density.name != "lebesgue" && density.name != "power" &&
      density.name != "table")
    throw schema_error("unknown density '" + density.name + "'",
                       path + ".density");
  if (!j.contains("interval") || !j["interval"].is_array() ||
      j["interval"].size() != 2)
    throw schema_error("expected [a,b]", path + ".interval");
  density.a = j["interval"][0].get<double>();
  density.b = j["interval"][1].get<double>();
  if (density.name == "power") {
    if (!j.contains("exponent"))
      throw schema_error("power density needs an exponent",
                         path + ".exponent");
    density.exponent = j["exponent"].get<double>();
  }
  if (density.name == "table") {
    if (!j.contains("points") || !j["points"].is_array() ||
        j["points"].empty())
      throw schema_error("table density needs points", path + ".points");
    for (const auto& row : j["points"])
      density.table.emplace_back(row.at(0).get<double>(),
                                 row.at(1).get<double>());
    std::sort(density.table.begin(), density.table.end());
  }
  return density;
}

RadialMeasure parse_radial(const json& j, const std::string& path) {
  if (j.contains("atoms")) {
    RadialAtoms atoms;
    for (const auto& row : j["atoms"])
      atoms.atoms.emplace_back(row.at(0).get<double>(),
                               row.at(1).get<double>());
    return atoms;
  }
  if (j.contains("density")) return parse_radial_density(j, path);
  throw schema_error("radial measure needs 'atoms' or 'density'", path);
}

json emit_radial(const RadialMeasure& sigma) {
  if (const auto* atoms = std::get_if<RadialAtoms>(&sigma)) {
    json rows = json::array();
    for (const auto& [r, w] : atoms->atoms) rows.push_back({r, w});
    json j;
    j["atoms"] = rows;
    return j;
  }
  return emit_radial_density(std::get<RadialDensity>(sigma));
}

}  // namespace

Measure parse_measure(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what(), "$");
  }
  Measure mu;
  try {
    mu.d = j.at("d").get<int>();
    mu.R = j.at("R").get<double>();
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "discrete") {
      Discrete discrete;
      if (!j.contains("atoms"))
        throw schema_error("discrete measure needs atoms", "$.atoms");
      for (const auto& row : j["atoms"]) {
        Point x{0.0, 0.0, 0.0};
        const auto& coords = row.at(0);
        if (!coords.is_array() || static_cast<int>(coords.size()) != mu.d)
          throw schema_error("atom point has wrong dimension",
                             "$.atoms[].point");
        for (int i = 0; i < mu.d; ++i) x[i] = coords[i].get<double>();
        discrete.atoms.emplace_back(x, row.at(1).get<double>());
      }
      mu.body = std::move(discrete);
    } else if (variant == "radial_product") {
      mu.body = RadialProduct{parse_radial(j.at("radial"), "$.radial")};
    } else if (variant == "radial_times_dirac") {
      mu.body = RadialTimesDirac{parse_radial(j.at("radial"), "$.radial")};
    } else if (variant == "polar_density") {
      PolarDensity polar;
      polar.w0 = parse_radial_density(j.at("w0"), "$.w0");
      polar.w1 = parse_radial_density(j.at("w1"), "$.w1");
      polar.assert_hankel_positive =
          j.value("assert_hankel_positive", false);
      mu.body = std::move(polar);
    } else {
      throw schema_error("unknown variant '" + variant + "'", "$.variant");
    }
  } catch (const json::exception& e) {
    throw schema_error(std::string("missing or ill-typed field: ") + e.what(),
                       "$");
  }
  validate(mu);
  return mu;
}

std::string emit_measure(const Measure& mu) {
  json j;
  j["d"] = mu.d;
  j["R"] = mu.R;
  if (const auto* discrete = std::get_if<Discrete>(&mu.body)) {
    j["variant"] = "discrete";
    json rows = json::array();
    for (const auto& [x, w] : discrete->atoms) {
      json coords = json::array();
      for (int i = 0; i < mu.d; ++i) coords.push_back(x[i]);
      rows.push_back({coords, w});
    }
    j["atoms"] = rows;
  } else if (const auto* rp = std::get_if<RadialProduct>(&mu.body)) {
    j["variant"] = "radial_product";
    j["radial"] = emit_radial(rp->radial);
  } else if (const auto* rd = std::get_if<RadialTimesDirac>(&mu.body)) {
    j["variant"] = "radial_times_dirac";
    j["radial"] = emit_radial(rd->radial);
  } else {
    const auto& polar = std::get<PolarDensity>(mu.body);
    j["variant"] = "polar_density";
    j["w0"] = emit_radial_density(polar.w0);
    j["w1"] = emit_radial_density(polar.w1);
    j["assert_hankel_positive"] = polar.assert_hankel_positive;
  }
  return j.dump(2);
}

}  // namespace mmt::measures
