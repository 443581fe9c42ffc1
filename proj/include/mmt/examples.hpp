#ifndef MMT_EXAMPLES_HPP
#define MMT_EXAMPLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "mmt/measures.hpp"

namespace mmt::examples {

/// Built-in measures exercised by the canned experiments:
///   ex0                uniform unit-disc measure (radial r dr x dtheta)
///   prop6-lebesgue     Lebesgue on [0,1] placed on the first axis, d = 2
///   ex1-degenerate     alias of prop6-lebesgue (degenerate direction +x)
///   polar-positive     polar density w0 = 1, w1 = 1/2 on [0,1]
///   rotation-invariant three-radius rotation-invariant atom shells
std::optional<measures::Measure> builtin_example(const std::string& name);
std::vector<std::string> builtin_names();

/// Rotation-invariant shell measure with the given radii, unit weights.
measures::Measure shell_measure(const std::vector<double>& radii);

}  // namespace mmt::examples

#endif
