#include "mmt/io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "mmt/errors.hpp"

namespace mmt::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string table_csv(const markov::CoefficientTable& table) {
  std::ostringstream out;
  out << "l,k,m,coefficient\n";
  for (int l = 0; l <= table.L(); ++l)
    for (const auto& [km, c] : table.f[l].coeffs)
      out << l << ',' << km.first << ',' << km.second << ','
          << format_double(c) << '\n';
  return out.str();
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

markov::CoefficientTable table_from_csv(const std::string& text, int d,
                                        double R) {
  markov::CoefficientTable table;
  table.d = d;
  table.R = R;
  table.provenance = "csv";
  const auto rows = parse_csv(text);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && !row.empty() && row[0] == "l") continue;  // header
    if (row.size() != 4)
      throw schema_error("expected l,k,m,coefficient",
                         "row " + std::to_string(i + 1));
    const int l = std::stoi(row[0]), k = std::stoi(row[1]),
              m = std::stoi(row[2]);
    const double c = std::stod(row[3]);
    if (l < 0 || k < 0 || k > l || (l - k) % 2 != 0)
      throw schema_error("invalid (l,k) pair", "row " + std::to_string(i + 1));
    if (l >= static_cast<int>(table.f.size()))
      table.f.resize(l + 1, markov::HarmonicExpansion{d, {}});
    table.f[l].coeffs[{k, m}] = c;
  }
  for (auto& fl : table.f) fl.d = d;
  return table;
}

std::string moments_csv(const polyalg::MomentSeq& values) {
  std::ostringstream out;
  out << "l,value\n";
  for (std::size_t l = 0; l < values.size(); ++l)
    out << l << ',' << format_double(values.values[l]) << '\n';
  return out.str();
}

polyalg::MomentSeq moments_from_csv(const std::string& text) {
  const auto rows = parse_csv(text);
  std::vector<std::pair<int, double>> entries;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && !row.empty() && row[0] == "l") continue;
    if (row.size() != 2)
      throw schema_error("expected l,value", "row " + std::to_string(i + 1));
    entries.emplace_back(std::stoi(row[0]), std::stod(row[1]));
  }
  std::vector<double> values;
  for (const auto& [l, v] : entries) {
    if (l < 0) throw schema_error("negative index", "l");
    if (l >= static_cast<int>(values.size())) values.resize(l + 1, 0.0);
    values[l] = v;
  }
  return polyalg::MomentSeq::make(std::move(values));
}

std::string rule_json(const cubature::CubatureRule& rule) {
  nlohmann::ordered_json j;
  j["n"] = rule.n;
  j["d"] = rule.d;
  j["R"] = rule.R;
  j["sphere_degree"] = rule.sphere.exact_degree;
  j["provenance"] = rule.provenance;
  j["hankel_positive"] = rule.hankel_positive;
  j["note"] =
      "the point/weight set realizes the functional on the algebraic node "
      "curves; no representing measure is constructed";
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& pt : rule.points) {
    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (int i = 0; i < rule.d; ++i) coords.push_back(pt.x[i]);
    pts.push_back({{"x", coords}, {"weight", pt.weight}});
  }
  j["points"] = pts;
  nlohmann::ordered_json dirs = nlohmann::ordered_json::array();
  for (std::size_t q = 0; q < rule.sphere.size(); ++q) {
    nlohmann::ordered_json dj;
    nlohmann::ordered_json theta = nlohmann::ordered_json::array();
    for (int i = 0; i < rule.d; ++i) theta.push_back(rule.sphere.nodes[q][i]);
    dj["theta"] = theta;
    dj["sphere_weight"] = rule.sphere.weights[q];
    dj["nodes"] = rule.direction_rules[q].nodes;
    dj["alphas"] = rule.direction_rules[q].weights;
    dirs.push_back(dj);
  }
  j["directions"] = dirs;
  return j.dump(2);
}

std::string rule_csv(const cubature::CubatureRule& rule) {
  std::ostringstream out;
  for (int i = 1; i <= rule.d; ++i) out << 'x' << i << ',';
  out << "weight\n";
  for (const auto& pt : rule.points) {
    for (int i = 0; i < rule.d; ++i) out << format_double(pt.x[i]) << ',';
    out << format_double(pt.weight) << '\n';
  }
  return out.str();
}

}  // namespace mmt::io
