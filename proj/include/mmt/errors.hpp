#ifndef MMT_ERRORS_HPP
#define MMT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmt {

/// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A moment sequence is too short for the requested operation.
struct insufficient_moments_error : error {
  using error::error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct quadrature_error : error {
  using error::error;
};

/// Eigenvalue iteration or root refinement failed.
struct root_error : error {
  using error::error;
};

/// The determinant-built Pade polynomial collapsed to zero at some direction.
struct degenerate_pair_error : error {
  degenerate_pair_error(const std::string& what, double theta_angle)
      : error(what), angle(theta_angle) {}
  double angle;  // offending direction, as an angle for d=2 or a packed id
};

/// Fewer real simple roots in (-R,R) than the order requires.
struct root_defect_error : error {
  using error::error;
};

/// Measure JSON did not match the schema; carries the field path.
struct schema_error : error {
  schema_error(const std::string& what, const std::string& field_path)
      : error(what + " (at " + field_path + ")"), path(field_path) {}
  std::string path;
};

/// Evaluation requested outside the domain of convergence.
struct domain_error : error {
  using error::error;
};

}  // namespace mmt

#endif
