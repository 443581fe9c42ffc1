#ifndef MMT_IO_HPP
#define MMT_IO_HPP

#include <string>

#include "mmt/cubature.hpp"
#include "mmt/markov.hpp"

namespace mmt::io {

/// Shortest round-trip decimal form (17 significant digits, '.' decimal).
std::string format_double(double v);

/// CSV with header "l,k,m,coefficient", one row per stored harmonic term.
std::string table_csv(const markov::CoefficientTable& table);
markov::CoefficientTable table_from_csv(const std::string& text, int d,
                                        double R);

/// CSV with header "l,value" for one directional moment sequence.
std::string moments_csv(const polyalg::MomentSeq& values);
polyalg::MomentSeq moments_from_csv(const std::string& text);

std::string rule_json(const cubature::CubatureRule& rule);
/// CSV with header "x1,..,xd,weight", one cubature point per row.
std::string rule_csv(const cubature::CubatureRule& rule);

}  // namespace mmt::io

#endif
