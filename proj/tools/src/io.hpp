#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rrm/state.hpp"

namespace rrm::cli {

using json = nlohmann::ordered_json;

json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);
DensityMatrix read_state_file(const std::string& path);

// A JSON array of flat objects becomes one CSV row per object, a single
// object becomes one row. Nested values are written as compact JSON.
std::string render(const json& data, const std::string& format);

// Writes to `path`, or to `fallback` when path is empty.
void write_text(const std::string& path, const std::string& text, std::ostream& fallback);

// "runs/fig2.csv" + "boundaries" -> "runs/fig2_boundaries.csv"
std::string companion_path(const std::string& out, const std::string& tag);

json versions();

}  // namespace rrm::cli
