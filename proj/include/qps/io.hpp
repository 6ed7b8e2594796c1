#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "qps/wigner.hpp"

namespace qps {

Family family_from_string(const std::string& s);

// State documents:
//   {"dim": N, "kind": "pure",    "data": [[re, im] x N]}
//   {"dim": N, "kind": "density", "data": [[re, im] x N^2], row-major}
// Pure vectors are normalized before the outer product; density input is
// validated against the density-matrix invariants.
DensityMatrix parse_state(const nlohmann::json& doc);
DensityMatrix load_state(const std::string& path);

// CSV: header dq,dp,q,p,w; q and p with one decimal, w with 17
// significant digits; rows ordered dq-major.
void write_wigner_csv(std::ostream& os, const WignerGrid& w);
nlohmann::ordered_json wigner_to_json(const WignerGrid& w);

// Row-major [re, im] pairs.
nlohmann::ordered_json matrix_to_json(const CMat& m);

// CSV: header dq,dp,row,col,re,im; one line per matrix entry.
void write_fano_csv(std::ostream& os, const FanoGrid& grid,
                    std::optional<HalfPoint> only = std::nullopt);
nlohmann::ordered_json fano_to_json(const FanoGrid& grid,
                                    std::optional<HalfPoint> only = std::nullopt);

void write_rep_csv(std::ostream& os, const RepUnitary& rep);
nlohmann::ordered_json rep_to_json(const RepUnitary& rep);

// Deterministic float formatting used by every CSV writer.
std::string fmt17(double v);

} // namespace qps
