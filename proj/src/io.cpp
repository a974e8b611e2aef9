#include "limitroots/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace limitroots {

using nlohmann::json;

CoxeterSpec spec_from_json(const json& j) {
  CoxeterSpec spec;
  try {
    spec.rank = j.at("rank").get<int>();
    spec.labels = j.at("labels").get<std::vector<std::vector<int>>>();
    if (j.contains("b_overrides")) {
      for (const auto& o : j.at("b_overrides")) {
        spec.b_overrides.push_back(
            {o.at("i").get<int>(), o.at("j").get<int>(), o.at("value").get<double>()});
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, std::string("malformed spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

json spec_to_json(const CoxeterSpec& spec) {
  json j;
  j["rank"] = spec.rank;
  j["labels"] = spec.labels;
  j["b_overrides"] = json::array();
  for (const auto& o : spec.b_overrides) {
    j["b_overrides"].push_back({{"i", o.i}, {"j", o.j}, {"value", o.value}});
  }
  return j;
}

CoxeterSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidSpec, "cannot open spec file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, "spec file " + path + " is not JSON: " + e.what());
  }
  return spec_from_json(j);
}

void write_normalized_csv(std::ostream& out, const GeometricModule& m,
                          const TransverseHyperplane& h, const RootTable& table) {
  const int n = m.rank();
  out << "id,depth";
  for (int s = 0; s < n; ++s) out << ",b" << s;
  out << ",q_residual\n";
  out.precision(17);
  for (std::size_t id = 0; id < table.size(); ++id) {
    const Vector hat = normalize(h, table[id].coords).coords;
    const Vector bary = simplex_coordinates(m, h, hat);
    out << id << ',' << table[id].depth;
    for (int s = 0; s < n; ++s) out << ',' << bary(s);
    out << ',' << std::abs(quadratic(m, hat)) << '\n';
  }
}

json provenance_to_json(const Provenance& p) {
  struct Visitor {
    json operator()(std::monostate) const { return {{"kind", "none"}}; }
    json operator()(const PairSource& s) const {
      return {{"kind", "pair"}, {"roots", {s.first, s.second}}};
    }
    json operator()(const ActedSource& s) const {
      return {{"kind", "acted"}, {"word", s.word}, {"base", s.base}};
    }
    json operator()(const ConicSource& s) const { return {{"kind", "conic"}, {"face", s.face}}; }
  };
  return std::visit(Visitor{}, p);
}

namespace {

std::string provenance_text(const Provenance& p) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "none"; }
    std::string operator()(const PairSource& s) const {
      return "pair:" + std::to_string(s.first) + ":" + std::to_string(s.second);
    }
    std::string operator()(const ActedSource& s) const {
      std::string w;
      for (int g : s.word) w += std::to_string(g) + ".";
      if (!w.empty()) w.pop_back();
      return "acted:" + std::to_string(s.base) + ":" + w;
    }
    std::string operator()(const ConicSource& s) const {
      return "conic:" + std::to_string(s.face);
    }
  };
  return std::visit(Visitor{}, p);
}

}  // namespace

json limit_points_to_json(const GeometricModule& m, const TransverseHyperplane& h,
                          const std::vector<LimitPoint>& points) {
  json arr = json::array();
  for (const auto& p : points) {
    const Vector bary = m.is_basis() ? simplex_coordinates(m, h, p.coords) : p.coords;
    arr.push_back({{"coords", std::vector<double>(p.coords.data(), p.coords.data() + p.coords.size())},
                   {"barycentric", std::vector<double>(bary.data(), bary.data() + bary.size())},
                   {"q", quadratic(m, p.coords)},
                   {"source", provenance_to_json(p.provenance)}});
  }
  return arr;
}

void write_limit_points_csv(std::ostream& out, const GeometricModule& m,
                            const TransverseHyperplane& h,
                            const std::vector<LimitPoint>& points) {
  const int n = m.rank();
  out << "id,source";
  for (int s = 0; s < n; ++s) out << ",b" << s;
  out << ",q_residual\n";
  out.precision(17);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vector bary = simplex_coordinates(m, h, points[i].coords);
    out << i << ',' << provenance_text(points[i].provenance);
    for (int s = 0; s < n; ++s) out << ',' << bary(s);
    out << ',' << std::abs(quadratic(m, points[i].coords)) << '\n';
  }
}

std::vector<Vector> read_roots_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kInvalidSpec, "empty roots CSV");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  std::vector<int> coord_cols;
  int id_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "id") id_col = static_cast<int>(c);
    if (header[c].size() > 1 && header[c][0] == 'c' &&
        header[c].find_first_not_of("0123456789", 1) == std::string::npos) {
      coord_cols.push_back(static_cast<int>(c));
    }
  }
  if (id_col < 0 || coord_cols.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "roots CSV lacks id or coordinate columns");
  }
  std::map<long, Vector> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) throw Error(ErrorCode::kInvalidSpec, "ragged roots CSV");
    Vector v(static_cast<Eigen::Index>(coord_cols.size()));
    for (std::size_t k = 0; k < coord_cols.size(); ++k) v(k) = std::stod(cells[coord_cols[k]]);
    rows[std::stol(cells[id_col])] = std::move(v);
  }
  std::vector<Vector> out;
  for (auto& [id, v] : rows) {
    if (id != static_cast<long>(out.size())) {
      throw Error(ErrorCode::kInvalidSpec, "roots CSV ids are not contiguous");
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace limitroots
