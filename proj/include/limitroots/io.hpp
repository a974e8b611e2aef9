#pragma once

#include <iosfwd>
#include "json.hpp"
#include <string>
#include <vector>

#include "limitroots/bilinear.hpp"
#include "limitroots/limits.hpp"
#include "limitroots/normalization.hpp"
#include "limitroots/roots.hpp"

namespace limitroots {

// {"rank": n, "labels": [[...]], "b_overrides": [{"i":0,"j":1,"value":-1.5}]}
// with label 0 standing for infinity.
CoxeterSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const CoxeterSpec& spec);
CoxeterSpec load_spec(const std::string& path);

// id, depth, barycentric coordinates, q residual of the normalized root.
void write_normalized_csv(std::ostream& out, const GeometricModule& m,
                          const TransverseHyperplane& h, const RootTable& table);

nlohmann::json provenance_to_json(const Provenance& p);

nlohmann::json limit_points_to_json(const GeometricModule& m, const TransverseHyperplane& h,
                                    const std::vector<LimitPoint>& points);
void write_limit_points_csv(std::ostream& out, const GeometricModule& m,
                            const TransverseHyperplane& h,
                            const std::vector<LimitPoint>& points);

// Reads the coordinate columns c0..c{n-1} of a roots CSV written by
// write_roots_csv, indexed by the id column.
std::vector<Vector> read_roots_csv(std::istream& in);

}  // namespace limitroots
