#include "io.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

namespace rrm::cli {

json state_to_json(const DensityMatrix& rho) {
  json j;
  j["d"] = rho.d();
  j["n"] = rho.n();
  json rows = json::array();
  const CMatrix& m = rho.matrix();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

DensityMatrix state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("n") || !j.contains("matrix"))
    throw ValidationError("state file: expected an object with keys d, n, matrix");
  if (!j["d"].is_number_integer() || !j["n"].is_number_integer())
    throw ValidationError("state file: d and n must be integers");
  const DimSpec dims = DimSpec::make(j["d"].get<int>(), j["n"].get<int>());
  const long D = dims.total();
  const json& rows = j["matrix"];
  if (!rows.is_array() || static_cast<long>(rows.size()) != D)
    throw ValidationError("state file: matrix must have d^n rows");
  CMatrix m(D, D);
  for (long r = 0; r < D; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<long>(row.size()) != D)
      throw ValidationError("state file: row " + std::to_string(r) + " must have d^n entries");
    for (long c = 0; c < D; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ValidationError("state file: entries must be [re, im] pairs");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return DensityMatrix(m, dims);
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open state file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return state_from_json(j);
}

namespace {

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string()) s = v.get<std::string>();
  else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string to_csv(const json& data) {
  json rows = data.is_array() ? data : json::array({data});
  std::ostringstream os;
  if (rows.empty()) return "";
  std::vector<std::string> cols;
  for (const auto& [k, v] : rows.front().items()) cols.push_back(k);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      os << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string render(const json& data, const std::string& format) {
  if (format == "json") return data.dump(2) + "\n";
  if (format == "csv") return to_csv(data);
  throw ValidationError("unknown format '" + format + "' (expected json or csv)");
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw IoError("write to '" + path + "' failed");
}

std::string companion_path(const std::string& out, const std::string& tag) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "_" + tag;
  return out.substr(0, dot) + "_" + tag + out.substr(dot);
}

json versions() {
  json v;
  v["rrm"] = RRM_VERSION;
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  v["cli11"] = CLI11_VERSION;
  v["compiler"] = __VERSION__;
  return v;
}

}  // namespace rrm::cli
