#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "io.hpp"
#include "rrm/shadows.hpp"
#include "rrm/zoo.hpp"

namespace rrm::cli {

// Every flag of every subcommand; only the active subcommand's are set.
struct Options {
  std::string command;
  std::string state, state2;
  std::string zoo, zoo2;
  std::vector<std::string> params, params2;
  std::uint64_t seed = 0;
  bool has_seed = false;
  long settings = -1;  // -1: recipe default
  long shots = 0;
  long runs = -1;
  long points = -1;
  long samples = 10000;
  int threads = 0;
  std::string out;
  std::string format;  // empty: command default
  std::string mode = "exact";
  std::string kind = "RRM";
  int t = 2;
  int d = 3;
  int n = 2;
  bool list = false;
  std::string name;
  std::string random_kind = "mixed_hs";
  double c2 = -1.0, c4 = -1.0;
  std::string grid_param = "p";
  std::vector<double> grid;
  std::vector<std::string> ensembles;
  std::string target = "ghz";
  std::string snapshots;
  std::string variant = "local_combo";
  std::vector<double> observable;  // alpha1, alpha2, beta1, beta2
  bool fidelity = false;
};

struct Result {
  json data;
  std::string default_format = "json";
  std::vector<std::pair<std::string, json>> companions;  // (tag, data)
};

std::uint64_t require_seed(const Options& o, const std::string& what);
StateSpec parse_spec(const std::string& name, const std::vector<std::string>& kv);
DensityMatrix load_state(const std::string& file, const std::string& zoo, const std::vector<std::string>& kv);
json verdict_json(double C2, double C4, int d);
json shadow_table(const std::vector<ShadowGridPoint>& points, std::uint64_t seed);

Result cmd_zoo(const Options& o);
Result cmd_moments(const Options& o);
Result cmd_schmidt(const Options& o);
Result cmd_imaginarity(const Options& o);
Result cmd_shadow(const Options& o);
Result cmd_overlap(const Options& o);
Result cmd_verify_haar(const Options& o);

Result recipe_table1(const Options& o);
Result recipe_fig2(const Options& o);
Result recipe_fig3a(const Options& o);
Result recipe_fig3b(const Options& o);
Result recipe_sfig1(const Options& o);
Result recipe_sfig1c(const Options& o);
Result recipe_sfig2(const Options& o);

}  // namespace rrm::cli
