#include "mmt/harmonics.hpp"

#include <cmath>
#include <numbers>

#include "mmt/errors.hpp"

namespace mmt::harmonics {

namespace {
constexpr double kPi = std::numbers::pi;
}

double dot(const Point& a, const Point& b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a, int d) { return std::sqrt(dot(a, a, d)); }

Point unit2(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

Point unit3(double polar, double azimuth) {
  const double s = std::sin(polar);
  return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)};
}

double surface_area(int d) {
  if (d == 2) return 2.0 * kPi;
  if (d == 3) return 4.0 * kPi;
  throw error("surface_area: only d = 2 and d = 3 are supported");
}

int harmonic_count(int d, int k) {
  if (k < 0) throw error("harmonic_count: negative degree");
  if (d == 2) return k == 0 ? 1 : 2;
  if (d == 3) return 2 * k + 1;
  throw error("harmonic_count: only d = 2 and d = 3 are supported");
}

namespace {

// Associated Legendre P_k^m(x) without the Condon-Shortley phase, by the
// standard upward recurrence in the degree.
double assoc_legendre(int k, int m, double x) {
  // P_m^m = (2m-1)!! (1-x^2)^{m/2}
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= fact * somx2;
      fact += 2.0;
    }
  }
  if (k == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (k == m + 1) return pmmp1;
  double pkm = 0.0;
  for (int kk = m + 2; kk <= k; ++kk) {
    pkm = (x * (2.0 * kk - 1.0) * pmmp1 - (kk + m - 1.0) * pmm) / (kk - m);
    pmm = pmmp1;
    pmmp1 = pkm;
  }
  return pkm;
}

double sh3_norm(int k, int m) {
  // sqrt((2k+1)/(4 pi) * (k-m)!/(k+m)!)
  double ratio = 1.0;
  for (int i = k - m + 1; i <= k + m; ++i) ratio /= static_cast<double>(i);
  return std::sqrt((2.0 * k + 1.0) / (4.0 * kPi) * ratio);
}

}  // namespace

double eval_Y(int d, int k, int m, const Point& theta) {
  if (k < 0 || m < 1 || m > harmonic_count(d, k))
    throw error("eval_Y: invalid harmonic index (k,m)");
  if (d == 2) {
    if (k == 0) return 1.0 / std::sqrt(2.0 * kPi);
    const double v = std::atan2(theta[1], theta[0]);
    const double f = 1.0 / std::sqrt(kPi);
    return m == 1 ? f * std::cos(k * v) : f * std::sin(k * v);
  }
  if (d == 3) {
    const double ct = theta[2];
    if (m == 1) return sh3_norm(k, 0) * assoc_legendre(k, 0, ct);
    const int j = m / 2;  // azimuthal order; m=2j cosine, m=2j+1 sine
    const double az = std::atan2(theta[1], theta[0]);
    const double base =
        std::sqrt(2.0) * sh3_norm(k, j) * assoc_legendre(k, j, ct);
    return (m % 2 == 0) ? base * std::cos(j * az) : base * std::sin(j * az);
  }
  throw error("eval_Y: only d = 2 and d = 3 are supported");
}

double legendre(int d, int k, double t) {
  if (k < 0) throw error("legendre: negative degree");
  if (k == 0) return 1.0;
  if (d == 2) {
    // Chebyshev recurrence, exact normalization T_k(1) = 1.
    double tm = 1.0, tk = t;
    for (int i = 2; i <= k; ++i) {
      const double tn = 2.0 * t * tk - tm;
      tm = tk;
      tk = tn;
    }
    return tk;
  }
  if (d == 3) {
    double pm = 1.0, pk = t;
    for (int i = 2; i <= k; ++i) {
      const double pn = ((2.0 * i - 1.0) * t * pk - (i - 1.0) * pm) / i;
      pm = pk;
      pk = pn;
    }
    return pk;
  }
  throw error("legendre: only d = 2 and d = 3 are supported");
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

SphereRule sphere_rule(int d, int degree) {
  if (degree < 0) throw error("sphere_rule: negative degree");
  SphereRule rule;
  rule.d = d;
  rule.exact_degree = degree;
  if (d == 2) {
    const int M = std::max(2 * degree + 2, 4);
    rule.nodes.reserve(M);
    rule.weights.assign(M, 2.0 * kPi / M);
    for (int j = 0; j < M; ++j) rule.nodes.push_back(unit2(2.0 * kPi * j / M));
    return rule;
  }
  if (d == 3) {
    const int ngl = degree / 2 + 1;
    const int M = std::max(degree + 1, 2);
    std::vector<double> ct, wt;
    gauss_legendre(ngl, ct, wt);
    for (int i = 0; i < ngl; ++i) {
      const double st = std::sqrt(std::max(0.0, 1.0 - ct[i] * ct[i]));
      for (int j = 0; j < M; ++j) {
        const double az = 2.0 * kPi * j / M;
        rule.nodes.push_back({st * std::cos(az), st * std::sin(az), ct[i]});
        rule.weights.push_back(wt[i] * 2.0 * kPi / M);
      }
    }
    return rule;
  }
  throw error("sphere_rule: only d = 2 and d = 3 are supported");
}

}  // namespace mmt::harmonics
