#include "mmt/examples.hpp"

namespace mmt::examples {

using measures::Measure;
using measures::PolarDensity;
using measures::RadialAtoms;
using measures::RadialDensity;
using measures::RadialProduct;
using measures::RadialTimesDirac;

measures::Measure shell_measure(const std::vector<double>& radii) {
  RadialAtoms atoms;
  double R = 0.0;
  for (double r : radii) {
    atoms.atoms.emplace_back(r, 1.0);
    R = std::max(R, r);
  }
  Measure mu;
  mu.d = 2;
  mu.R = std::max(R, 1.0);
  mu.body = RadialProduct{atoms};
  return mu;
}

std::optional<measures::Measure> builtin_example(const std::string& name) {
  if (name == "ex0") {
    // Unit-disc area measure in polar form: dsigma = r dr on [0,1].
    RadialDensity density;
    density.name = "power";
    density.exponent = 1.0;
    density.a = 0.0;
    density.b = 1.0;
    Measure mu;
    mu.d = 2;
    mu.R = 1.0;
    mu.body = RadialProduct{density};
    return mu;
  }
  if (name == "prop6-lebesgue" || name == "ex1-degenerate") {
    RadialDensity density;  // plain Lebesgue, moments 1/(l+1)
    density.name = "lebesgue";
    density.a = 0.0;
    density.b = 1.0;
    Measure mu;
    mu.d = 2;
    mu.R = 1.0;
    mu.body = RadialTimesDirac{density};
    return mu;
  }
  if (name == "polar-positive") {
    PolarDensity polar;
    polar.w0.name = "lebesgue";
    polar.w0.a = 0.0;
    polar.w0.b = 1.0;
    polar.w1.name = "table";
    polar.w1.a = 0.0;
    polar.w1.b = 1.0;
    polar.w1.table = {{0.0, 0.5}, {1.0, 0.5}};
    polar.assert_hankel_positive = true;
    Measure mu;
    mu.d = 2;
    mu.R = 1.0;
    mu.body = polar;
    return mu;
  }
  if (name == "rotation-invariant") return shell_measure({0.4, 0.7, 1.0});
  return std::nullopt;
}

std::vector<std::string> builtin_names() {
  return {"ex0", "prop6-lebesgue", "ex1-degenerate", "polar-positive",
          "rotation-invariant"};
}

}  // namespace mmt::examples
