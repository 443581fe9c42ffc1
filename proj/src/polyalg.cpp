#include "mmt/polyalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "mmt/errors.hpp"

namespace mmt::polyalg {

namespace {
constexpr double kTrimRel = 1e-12;
}

UniPoly::UniPoly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  trim();
}

UniPoly UniPoly::from_real(const std::vector<double>& coeffs) {
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monomial(int degree, Complex c) {
  std::vector<Complex> v(degree + 1, Complex(0.0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  double maxmag = 0.0;
  for (const Complex& x : c_) maxmag = std::max(maxmag, std::abs(x));
  const double thr = kTrimRel * maxmag;
  // Interior coefficients below threshold are zeroed, trailing ones dropped.
  for (Complex& x : c_)
    if (std::abs(x) <= thr) x = 0.0;
  while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
}

Complex UniPoly::eval(Complex z) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t j = 1; j < c_.size(); ++j)
    d[j - 1] = c_[j] * static_cast<double>(j);
  return UniPoly(std::move(d));
}

bool UniPoly::is_real(double tol) const {
  double maxmag = 0.0, maxim = 0.0;
  for (const Complex& x : c_) {
    maxmag = std::max(maxmag, std::abs(x));
    maxim = std::max(maxim, std::abs(x.imag()));
  }
  return maxim <= tol * std::max(maxmag, 1e-300);
}

std::vector<double> UniPoly::real_coeffs() const {
  std::vector<double> r(c_.size());
  for (std::size_t j = 0; j < c_.size(); ++j) r[j] = c_[j].real();
  return r;
}

UniPoly UniPoly::operator*(const UniPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return UniPoly();
  std::vector<Complex> out(c_.size() + rhs.c_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < rhs.c_.size(); ++j)
      out[i + j] += c_[i] * rhs.c_[j];
  return UniPoly(std::move(out));
}

UniPoly UniPoly::operator+(const UniPoly& rhs) const {
  std::vector<Complex> out(std::max(c_.size(), rhs.c_.size()), Complex(0.0));
  for (std::size_t j = 0; j < c_.size(); ++j) out[j] += c_[j];
  for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[j] += rhs.c_[j];
  return UniPoly(std::move(out));
}

UniPoly UniPoly::operator-(const UniPoly& rhs) const {
  return *this + rhs.scaled(-1.0);
}

UniPoly UniPoly::scaled(Complex factor) const {
  std::vector<Complex> out = c_;
  for (Complex& x : out) x *= factor;
  return UniPoly(std::move(out));
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& rhs) const {
  if (rhs.is_zero()) throw error("UniPoly::divrem: division by zero");
  std::vector<Complex> rem = c_;
  const int dn = degree(), dd = rhs.degree();
  if (dn < dd) return {UniPoly(), *this};
  std::vector<Complex> quot(dn - dd + 1, Complex(0.0));
  for (int j = dn; j >= dd; --j) {
    const Complex q = rem[j] / rhs.c_[dd];
    quot[j - dd] = q;
    for (int i = 0; i <= dd; ++i) rem[j - dd + i] -= q * rhs.c_[i];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

MomentSeq MomentSeq::make(std::vector<double> values) {
  MomentSeq f;
  f.values = std::move(values);
  for (double v : f.values) f.scale = std::max(f.scale, std::abs(v));
  return f;
}

MomentSeq MomentSeq::normalized() const {
  if (scale <= 0.0) return *this;
  std::vector<double> v = values;
  for (double& x : v) x /= scale;
  return MomentSeq::make(std::move(v));
}

std::vector<Complex> laurent_product_head(const UniPoly& p, const MomentSeq& f,
                                          int count) {
  std::vector<Complex> head(count, Complex(0.0));
  if (p.is_zero()) return head;
  const int n = p.degree();
  if (static_cast<int>(f.size()) < n + count)
    throw insufficient_moments_error(
        "laurent_product_head: need deg(p)+count moments");
  // zeta^j * f_l zeta^{-l-1} lands on zeta^{-c} exactly when l = c-1+j.
  for (int c = 1; c <= count; ++c) {
    Complex acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += p.coeff(j) * f.values[c - 1 + j];
    head[c - 1] = acc;
  }
  return head;
}

UniPoly polynomial_part(const UniPoly& p, const MomentSeq& f) {
  if (p.is_zero()) return UniPoly();
  const int n = p.degree();
  if (static_cast<int>(f.size()) < n)
    throw insufficient_moments_error("polynomial_part: need deg(p) moments");
  std::vector<Complex> q(std::max(n, 1), Complex(0.0));
  for (int k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (int l = 0; l <= n - 1 - k; ++l)
      acc += f.values[l] * p.coeff(k + 1 + l);
    q[k] = acc;
  }
  return UniPoly(std::move(q));
}

double det_lu(std::vector<std::vector<double>> a) {
  const int n = static_cast<int>(a.size());
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (int cc = col; cc < n; ++cc) a[r][cc] -= factor * a[col][cc];
    }
  }
  return det;
}

double hankel_det(const MomentSeq& f, int n) {
  if (n == 0) return 1.0;
  if (n < 0) throw error("hankel_det: negative order");
  if (static_cast<int>(f.size()) < 2 * n - 1)
    throw insufficient_moments_error("hankel_det: need 2n-1 moments");
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = f.values[i + j];
  return det_lu(std::move(a));
}

namespace {

// Parlett-Reinsch balancing (radix 2) of a square matrix in place.
void balance(Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if ((c + r) < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

RealRoots real_roots(const UniPoly& p, double lo, double hi) {
  if (p.is_zero()) throw error("real_roots: zero polynomial");
  if (!p.is_real())
    throw error("real_roots: polynomial has non-real coefficients");
  RealRoots out;
  const int n = p.degree();
  if (n == 0) return out;
  const std::vector<double> c = p.real_coeffs();
  if (n == 1) {
    const double r = -c[0] / c[1];
    if (r > lo && r < hi) out.roots.push_back(r);
    return out;
  }

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n - 1; ++j) comp(j + 1, j) = 1.0;
  for (int j = 0; j < n; ++j) comp(j, n - 1) = -c[j] / c[n];
  balance(comp);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw root_error("real_roots: eigenvalue iteration failed");

  const UniPoly dp = p.derivative();
  for (int j = 0; j < n; ++j) {
    Complex z(solver.eigenvalues()[j].real(), solver.eigenvalues()[j].imag());
    const Complex deriv = dp.eval(z);
    if (std::abs(deriv) > 0.0) z -= p.eval(z) / deriv;  // one Newton polish
    if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z))) {
      const double x = z.real();
      if (x > lo && x < hi) out.roots.push_back(x);
    } else if (std::abs(z) < hi) {
      out.complex_in_disc.push_back(z);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

void GaussPoly::add_term(const TKM& key, double coeff) {
  if (key.t < 0 || key.k < 0 || key.m < 1 ||
      key.m > harmonics::harmonic_count(d_, key.k))
    throw error("GaussPoly: invalid (t,k,m) key");
  terms_[key] += coeff;
  if (terms_[key] == 0.0) terms_.erase(key);
}

GaussPoly& GaussPoly::operator+=(const GaussPoly& rhs) {
  if (empty()) d_ = rhs.d_;
  if (rhs.d_ != d_ && !rhs.empty())
    throw error("GaussPoly: dimension mismatch");
  for (const auto& [key, c] : rhs.terms_) add_term(key, c);
  return *this;
}

GaussPoly GaussPoly::scaled(double factor) const {
  GaussPoly out(d_);
  if (factor == 0.0) return out;
  for (const auto& [key, c] : terms_) out.terms_[key] = c * factor;
  return out;
}

GaussPoly GaussPoly::radial_shift(int s) const {
  GaussPoly out(d_);
  for (const auto& [key, c] : terms_)
    out.terms_[TKM{key.t + s, key.k, key.m}] = c;
  return out;
}

int GaussPoly::max_degree() const {
  int deg = 0;
  for (const auto& [key, c] : terms_) deg = std::max(deg, 2 * key.t + key.k);
  return deg;
}

bool GaussPoly::is_homogeneous(int* deg) const {
  int d0 = -1;
  for (const auto& [key, c] : terms_) {
    const int g = 2 * key.t + key.k;
    if (d0 < 0) d0 = g;
    if (g != d0) return false;
  }
  if (deg) *deg = std::max(d0, 0);
  return true;
}

double GaussPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double homog_eval(const GaussPoly& F, const Point& x) {
  const int d = F.dim();
  const double r = harmonics::norm(x, d);
  if (r == 0.0) {
    // Only the constant component survives at the origin.
    double acc = 0.0;
    for (const auto& [key, c] : F.terms())
      if (key.t == 0 && key.k == 0)
        acc += c / std::sqrt(harmonics::surface_area(d));
    return acc;
  }
  Point theta = x;
  for (int i = 0; i < d; ++i) theta[i] /= r;
  double acc = 0.0;
  for (const auto& [key, c] : F.terms())
    acc += c * std::pow(r, 2 * key.t + key.k) *
           harmonics::eval_Y(d, key.k, key.m, theta);
  return acc;
}

Complex homog_eval_scaled(const GaussPoly& F, Complex zeta,
                          const Point& theta) {
  const int d = F.dim();
  if (std::abs(harmonics::norm(theta, d) - 1.0) > 1e-8)
    throw domain_error("homog_eval_scaled: theta must be a unit vector");
  Complex acc = 0.0;
  for (const auto& [key, c] : F.terms())
    acc += c * std::pow(zeta, 2 * key.t + key.k) *
           harmonics::eval_Y(d, key.k, key.m, theta);
  return acc;
}

namespace {

// Project a function given by values on a sphere rule onto the harmonics of
// degree <= max_k with parity, returning (t,k,m) terms of total degree g.
void project_onto_basis(int d, int g, const harmonics::SphereRule& rule,
                        const std::vector<double>& values, GaussPoly& out,
                        double drop_threshold) {
  for (int k = g % 2; k <= g; k += 2) {
    for (int m = 1; m <= harmonics::harmonic_count(d, k); ++m) {
      double b = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        b += rule.weights[q] * values[q] *
             harmonics::eval_Y(d, k, m, rule.nodes[q]);
      if (std::abs(b) > drop_threshold)
        out.add_term(TKM{(g - k) / 2, k, m}, b);
    }
  }
}

}  // namespace

GaussPoly GaussPoly::operator*(const GaussPoly& rhs) const {
  GaussPoly out(d_);
  if (empty() || rhs.empty()) return out;
  if (rhs.d_ != d_) throw error("GaussPoly: dimension mismatch");

  // Split both factors into homogeneous components.
  std::map<int, GaussPoly> lhs_comp, rhs_comp;
  for (const auto& [key, c] : terms_) {
    auto [it, inserted] = lhs_comp.try_emplace(2 * key.t + key.k, d_);
    it->second.terms_[key] = c;
  }
  for (const auto& [key, c] : rhs.terms_) {
    auto [it, inserted] = rhs_comp.try_emplace(2 * key.t + key.k, d_);
    it->second.terms_[key] = c;
  }

  const double drop =
      1e-14 * std::max(max_abs_coeff() * rhs.max_abs_coeff(), 1e-300);
  for (const auto& [g1, f1] : lhs_comp) {
    for (const auto& [g2, f2] : rhs_comp) {
      const int g = g1 + g2;
      // The product restricted to the sphere is a spherical polynomial of
      // degree g; a rule of degree 2g integrates its harmonic projections
      // exactly.
      const auto rule = harmonics::sphere_rule(d_, 2 * g);
      std::vector<double> values(rule.size());
      for (std::size_t q = 0; q < rule.size(); ++q) {
        double v1 = 0.0, v2 = 0.0;
        for (const auto& [key, c] : f1.terms_)
          v1 += c * harmonics::eval_Y(d_, key.k, key.m, rule.nodes[q]);
        for (const auto& [key, c] : f2.terms_)
          v2 += c * harmonics::eval_Y(d_, key.k, key.m, rule.nodes[q]);
        values[q] = v1 * v2;
      }
      project_onto_basis(d_, g, rule, values, out, drop);
    }
  }
  return out;
}

GaussPoly from_monomials(int d, const std::vector<Monomial>& monomials) {
  GaussPoly out(d);
  for (const auto& mono : monomials) {
    if (mono.coeff == 0.0) continue;
    int g = 0;
    for (int i = 0; i < 3; ++i) {
      if (mono.exponents[i] < 0) throw error("from_monomials: negative power");
      if (i >= d && mono.exponents[i] != 0)
        throw error("from_monomials: exponent beyond dimension");
      g += mono.exponents[i];
    }
    const auto rule = harmonics::sphere_rule(d, 2 * g);
    std::vector<double> values(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q) {
      double v = mono.coeff;
      for (int i = 0; i < d; ++i)
        v *= std::pow(rule.nodes[q][i], mono.exponents[i]);
      values[q] = v;
    }
    project_onto_basis(d, g, rule, values, out,
                       1e-14 * std::max(std::abs(mono.coeff), 1e-300));
  }
  return out;
}

GaussPoly gauss_poly_det(const std::vector<std::vector<GaussPoly>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw error("gauss_poly_det: matrix not square");
  if (n == 0) return GaussPoly();
  const int d = m[0][0].dim();
  // Cofactor expansion along the first remaining row; column subsets are
  // tracked by index.  Fine for the small orders used here.
  std::vector<int> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = static_cast<int>(j);

  struct Rec {
    const std::vector<std::vector<GaussPoly>>& mat;
    int dim;
    GaussPoly run(std::size_t row, std::vector<int>& cs) {
      if (cs.size() == 1) return mat[row][cs[0]];
      GaussPoly acc(dim);
      for (std::size_t j = 0; j < cs.size(); ++j) {
        const int col = cs[j];
        if (mat[row][col].empty()) continue;
        std::vector<int> rest;
        rest.reserve(cs.size() - 1);
        for (std::size_t i = 0; i < cs.size(); ++i)
          if (i != j) rest.push_back(cs[i]);
        GaussPoly minor = run(row + 1, rest);
        GaussPoly contrib = mat[row][col] * minor;
        acc += (j % 2 == 0) ? contrib : contrib.scaled(-1.0);
      }
      return acc;
    }
  } rec{m, d};
  return rec.run(0, cols);
}

}  // namespace mmt::polyalg
