#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "rrm/rrm.hpp"
#include "rrm_cli/cli.hpp"

using namespace rrm;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rrm");
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("rrm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

}  // namespace

TEST_F(CliTest, ZooRoundTrip) {
  const auto r = invoke({"zoo", "isotropic", "--param", "d=3", "--param", "p=0.7", "--out", path("iso.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(slurp(path("iso.json")));
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["n"], 2);
  const DensityMatrix want = named_state({"isotropic", {{"d", 3}, {"p", 0.7}}});
  for (int r2 = 0; r2 < 9; ++r2)
    for (int c = 0; c < 9; ++c) {
      EXPECT_DOUBLE_EQ(j["matrix"][r2][c][0].get<double>(), want.matrix()(r2, c).real());
      EXPECT_DOUBLE_EQ(j["matrix"][r2][c][1].get<double>(), want.matrix()(r2, c).imag());
    }
  EXPECT_TRUE(fs::exists(path("iso.json.manifest.json")));

  const auto m = invoke({"moments", "--state", path("iso.json")});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NEAR(json::parse(m.out)["value"].template get<double>(), 0.7 * 0.7 / 5.0, 1e-12);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({"moments", "--state", path("missing.json")}).code, 2);
  EXPECT_EQ(invoke({"zoo", "isotropic", "--param", "p=2"}).code, 1);
  EXPECT_EQ(invoke({"zoo", "isotropic", "--param", "p"}).code, 1);
  EXPECT_EQ(invoke({"zoo", "no_such_state"}).code, 1);
  EXPECT_EQ(invoke({"zoo", "rho0"}).code, 1);
  EXPECT_EQ(invoke({"no-such-command"}).code, 1);
  EXPECT_EQ(invoke({"moments", "--zoo", "ghz", "--mode", "mc"}).code, 1);
  EXPECT_EQ(invoke({"fig3a", "--runs", "1"}).code, 1);
  EXPECT_EQ(invoke({"sfig2"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);

  std::ofstream(path("bad.json")) << "{\"d\": 2, \"n\": 1, \"matrix\": [[[1,0],[0,0]],[[0,0],[1,0]]]}";
  EXPECT_EQ(invoke({"moments", "--state", path("bad.json")}).code, 1);
  std::ofstream(path("garbage.json")) << "not json";
  EXPECT_EQ(invoke({"moments", "--state", path("garbage.json")}).code, 1);
  EXPECT_EQ(invoke({"table1", "--out", (dir / "no_dir" / "t.json").string()}).code, 2);
}

TEST_F(CliTest, Table1Rows) {
  const auto r = invoke({"table1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rows = json::parse(r.out);
  ASSERT_EQ(rows.size(), 3u);
  const double want[3][5] = {{0, 0, 4.5, 0.7071, 1}, {0.1250, 0.1250, 2.6250, 0.6124, 0.8660}, {0, 0, 0, 0, 0}};
  const char* keys[5] = {"QhatA", "QhatB", "G_AB", "F_LB", "F_R"};
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 5; ++c) EXPECT_NEAR(rows[k][keys[c]].get<double>(), want[k][c], 1e-4) << k << " " << keys[c];
  EXPECT_EQ(rows[2]["verdict"], "not_detected");
}

TEST_F(CliTest, Fig2Placements) {
  const auto r = invoke({"fig2", "--out", path("fig2.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(slurp(path("fig2.csv")));
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0], "state_id,p_or_u,C2,C4,sn_bound,boundary_flag,valid_state,min_eigenvalue");
  for (int i = 6; i <= 10; ++i) EXPECT_NE(rows[i].find("rho_u"), std::string::npos);
  for (int i = 6; i <= 10; ++i) EXPECT_NE(rows[i].find(",false,"), std::string::npos) << rows[i];
  EXPECT_EQ(lines(slurp(path("fig2_boundaries.csv"))).size(), 601u);
  const json m = json::parse(slurp(path("fig2.csv.manifest.json")));
  for (const char* k : {"command", "config", "seed", "versions", "wall_time_s", "timestamp"}) EXPECT_TRUE(m.contains(k)) << k;
}

TEST_F(CliTest, Sfig2Scatter) {
  const auto r = invoke({"sfig2", "--settings", "1000", "--points", "100", "--seed", "7", "--out", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(slurp(path("s.csv")));
  ASSERT_EQ(rows.size(), 201u);
  long rrm = 0;
  for (const auto& l : rows) rrm += l.rfind("RRM,", 0) == 0;
  EXPECT_EQ(rrm, 100);
}

TEST_F(CliTest, DeterministicAcrossThreads) {
  const std::vector<std::string> base = {"fig3a", "--grid", "0,0.5", "--settings", "50", "--runs", "4", "--seed", "11"};
  auto a = base, b = base;
  a.insert(a.end(), {"--threads", "1", "--out", path("a.csv")});
  b.insert(b.end(), {"--threads", "3", "--out", path("b.csv")});
  ASSERT_EQ(invoke(a).code, 0);
  ASSERT_EQ(invoke(b).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_FALSE(slurp(path("a.csv")).empty());

  const std::vector<std::string> ov = {"overlap", "--settings", "300", "--seed", "5", "--format", "csv"};
  auto c = ov, d = ov;
  c.insert(c.end(), {"--threads", "1"});
  d.insert(d.end(), {"--threads", "2"});
  EXPECT_EQ(invoke(c).out, invoke(d).out);
}

TEST_F(CliTest, ShadowSnapshotsReplay) {
  const auto r = invoke({"shadow", "--zoo", "noisy_ghz", "--param", "n=3", "--grid", "0.25", "--ensemble",
                      "local_orthogonal", "--settings", "20", "--seed", "9", "--snapshots", path("s.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(slurp(path("s.jsonl")));
  ASSERT_EQ(ls.size(), 20u);
  const DensityMatrix rho = named_state({"noisy_ghz", {{"n", 3}, {"p", 0.25}}});
  for (const auto& l : ls) {
    const json j = json::parse(l);
    const SeedPath sp{j["seed_path"][0].get<std::uint64_t>(), j["seed_path"][1].get<std::uint64_t>()};
    const ShadowSnapshot s = draw_snapshot(rho, Ensemble::local_orthogonal, sp);
    EXPECT_EQ(j["outcome"].get<std::vector<int>>(), s.outcome);
  }
}
