#ifndef MMT_POLYALG_HPP
#define MMT_POLYALG_HPP

#include <complex>
#include <map>
#include <vector>

#include "mmt/harmonics.hpp"

namespace mmt::polyalg {

using Complex = std::complex<double>;
using harmonics::Point;

/// Dense univariate polynomial with complex coefficients, index j holding
/// the coefficient of zeta^j.  Trailing coefficients below
/// 1e-12 * max|coeff| are trimmed; the zero polynomial is empty.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);
  static UniPoly from_real(const std::vector<double>& coeffs);
  static UniPoly monomial(int degree, Complex c = 1.0);

  const std::vector<Complex>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Complex coeff(int j) const {
    return (j >= 0 && j < static_cast<int>(c_.size())) ? c_[j] : Complex(0.0);
  }

  Complex eval(Complex z) const;
  UniPoly derivative() const;
  bool is_real(double tol = 1e-12) const;
  std::vector<double> real_coeffs() const;

  UniPoly operator*(const UniPoly& rhs) const;
  UniPoly operator+(const UniPoly& rhs) const;
  UniPoly operator-(const UniPoly& rhs) const;
  UniPoly scaled(Complex factor) const;

  /// Quotient and remainder of *this divided by rhs (rhs nonzero).
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& rhs) const;

 private:
  void trim();
  std::vector<Complex> c_;
};

/// Real moment sequence f_0, f_1, ... with its cached magnitude scale.
struct MomentSeq {
  std::vector<double> values;
  double scale = 0.0;  // max |values|, kept in sync by make()

  static MomentSeq make(std::vector<double> values);
  std::size_t size() const { return values.size(); }
  MomentSeq normalized() const;  // values divided by scale (if scale > 0)
};

/// Coefficients of zeta^{-1}..zeta^{-count} of p(zeta) * sum f_l zeta^{-l-1}
/// after the polynomial part is removed.
std::vector<Complex> laurent_product_head(const UniPoly& p, const MomentSeq& f,
                                          int count);

/// Polynomial part of p(zeta) * sum f_l zeta^{-l-1}; degree <= deg(p) - 1.
UniPoly polynomial_part(const UniPoly& p, const MomentSeq& f);

/// Determinant of the n x n Hankel matrix (f_{i+j})_{i,j=0..n-1} by LU with
/// partial pivoting; H_0 = 1 by convention.
double hankel_det(const MomentSeq& f, int n);

/// Determinant of a dense square matrix by LU with partial pivoting.
double det_lu(std::vector<std::vector<double>> a);

/// Root finding for real-coefficient polynomials on an interval.
struct RealRoots {
  std::vector<double> roots;             // ascending, inside (lo, hi)
  std::vector<Complex> complex_in_disc;  // complex pairs with |z| < hi
};

/// All real roots of p in (lo, hi) via a balanced companion-matrix
/// eigensolve plus one Newton step.  Complex eigenvalues inside the disc of
/// radius hi are reported as a diagnostic.
RealRoots real_roots(const UniPoly& p, double lo, double hi);

/// Key of one Gauss-decomposition basis element |x|^{2t} Y_{k,m}(x),
/// a homogeneous polynomial of degree 2t + k.
struct TKM {
  int t = 0, k = 0, m = 1;
  auto operator<=>(const TKM&) const = default;
};

/// Real polynomial on R^d stored against the basis |x|^{2t} Y_{k,m}(x).
/// Homogeneous polynomials have all stored keys with the same 2t + k.
class GaussPoly {
 public:
  GaussPoly() = default;
  explicit GaussPoly(int d) : d_(d) {}

  int dim() const { return d_; }
  const std::map<TKM, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const TKM& key, double coeff);
  GaussPoly& operator+=(const GaussPoly& rhs);
  GaussPoly operator*(const GaussPoly& rhs) const;
  GaussPoly scaled(double factor) const;
  /// Multiplication by the radial power |x|^{2s} (a plain index shift).
  GaussPoly radial_shift(int s) const;

  int max_degree() const;               // max 2t+k over stored terms
  bool is_homogeneous(int* deg = nullptr) const;
  double max_abs_coeff() const;

 private:
  int d_ = 2;
  std::map<TKM, double> terms_;
};

/// Evaluate F at a point of R^d.
double homog_eval(const GaussPoly& F, const Point& x);

/// Evaluate the analytic continuation along a ray: each term contributes
/// coeff * zeta^{2t+k} * Y_{k,m}(theta); for homogeneous F this equals
/// zeta^degree times the sphere value.
Complex homog_eval_scaled(const GaussPoly& F, Complex zeta,
                          const Point& theta);

/// Expand a (d-variate) monomial combination sum c_i * x^{alpha_i} in the
/// Gauss-decomposition basis; exact via sphere quadrature of twice the
/// monomial degree.
struct Monomial {
  std::array<int, 3> exponents{0, 0, 0};
  double coeff = 0.0;
};
GaussPoly from_monomials(int d, const std::vector<Monomial>& monomials);

/// Determinant of a square matrix of polynomials, expanded by cofactors.
GaussPoly gauss_poly_det(const std::vector<std::vector<GaussPoly>>& m);

}  // namespace mmt::polyalg

#endif
