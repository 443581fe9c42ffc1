#ifndef MMT_HARMONICS_HPP
#define MMT_HARMONICS_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace mmt::harmonics {

/// Points live in R^3; for d = 2 the third component is ignored (kept 0).
using Point = std::array<double, 3>;

double dot(const Point& a, const Point& b, int d);
double norm(const Point& a, int d);

/// Unit vector at polar-coordinate angle(s): d=2 takes the planar angle,
/// d=3 takes (polar from +z, azimuth).
Point unit2(double angle);
Point unit3(double polar, double azimuth);

/// Surface area of the unit sphere S^{d-1}: 2*pi for d=2, 4*pi for d=3.
double surface_area(int d);

/// Dimension a_k of the space of harmonic homogeneous polynomials of
/// degree k: d=2 gives 1 for k=0 and 2 otherwise; d=3 gives 2k+1.
int harmonic_count(int d, int k);

/// Real orthonormal spherical harmonic Y_{k,m}(theta), m in 1..a_k,
/// orthonormal with respect to the unnormalized surface measure.
/// d=2: Y_0 = 1/sqrt(2*pi), Y_{k,1} = cos(k*v)/sqrt(pi),
///      Y_{k,2} = sin(k*v)/sqrt(pi) with theta = (cos v, sin v).
/// d=3: real spherical harmonics; m=1 is zonal, m=2j cosine, m=2j+1 sine.
double eval_Y(int d, int k, int m, const Point& theta);

/// Legendre polynomial of degree k and dimension d, normalized P_k(1) = 1.
/// d=2 is the Chebyshev polynomial cos(k*arccos t), d=3 the classical one.
double legendre(int d, int k, double t);

/// Quadrature rule on S^{d-1} integrating spherical polynomials of degree
/// <= exact_degree; weights sum to surface_area(d).
struct SphereRule {
  int d = 2;
  int exact_degree = 0;
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

SphereRule sphere_rule(int d, int degree);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace mmt::harmonics

#endif
