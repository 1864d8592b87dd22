#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "urig/cli.hpp"

using namespace urig;
using namespace urig::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("urig_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

struct Output {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

template <class Options, class Fn>
Output call(Fn fn, const Options& o) {
  std::ostringstream out, err;
  const int code = fn(o, out, err);
  return {code, out.str(), err.str()};
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(URIG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("gen: writes the table and prints the header", "[cli][gen]") {
  TempDir dir;
  const auto r = call(run_gen, GenOptions{3, 5, 5, 1, dir.file("full.txt")});
  REQUIRE(r.code == kExitOk);
  REQUIRE(r.out == "3 5 5 1\n");
  REQUIRE(slurp(dir.file("full.txt")) == "3 5 5 1\n0 1 2 3 4\n0 1 2 3 4\n0 1 2 3 4\n");
}

TEST_CASE("gen: byte-identical under a fixed seed", "[cli][gen]") {
  TempDir dir;
  REQUIRE(call(run_gen, GenOptions{500, 300, 4, 17, dir.file("a.txt")}).code == kExitOk);
  REQUIRE(call(run_gen, GenOptions{500, 300, 4, 17, dir.file("b.txt")}).code == kExitOk);
  REQUIRE(slurp(dir.file("a.txt")) == slurp(dir.file("b.txt")));
}

TEST_CASE("gen: error exits", "[cli][gen][errors]") {
  TempDir dir;
  const auto bad = call(run_gen, GenOptions{3, 4, 5, 1, dir.file("x.txt")});
  REQUIRE(bad.code == kExitDomain);
  REQUIRE(bad.err.find("exceeds") != std::string::npos);
  REQUIRE(call(run_gen, GenOptions{3, 4, 2, 1, dir.file("missing/dir/x.txt")}).code == kExitIo);
}

TEST_CASE("gen -> analyze round trip matches the in-memory pipeline", "[cli][analyze]") {
  TempDir dir;
  REQUIRE(call(run_gen, GenOptions{2, 4, 2, 7, dir.file("t.txt")}).code == kExitOk);
  REQUIRE(call(run_analyze, AnalyzeOptions{dir.file("t.txt"), true}).code == kExitOk);

  REQUIRE(call(run_gen, GenOptions{400, 900, 3, 8, dir.file("big.txt")}).code == kExitOk);
  const auto j = call(run_analyze, AnalyzeOptions{dir.file("big.txt"), false}).json();
  const auto report = components_union_find(sample_key_rings({400, 900, 3, 8}));
  REQUIRE(j["n"] == 400);
  REQUIRE(j["m"] == 900);
  REQUIRE(j["k"] == 3);
  REQUIRE(j["components"] == report.component_count);
  REQUIRE(j["largest"] == report.largest);
  REQUIRE(j["isolated"] == report.isolated_count);
  REQUIRE(j["sizes_histogram"] == nlohmann::json(report.histogram()));
}

TEST_CASE("analyze: hand instances", "[cli][analyze]") {
  TempDir dir;
  spit(dir.file("two.txt"), "2 4 2 0\n0 1\n2 3\n");
  const auto two = call(run_analyze, AnalyzeOptions{dir.file("two.txt"), false}).json();
  REQUIRE(two["components"] == 2);
  REQUIRE(two["isolated"] == 2);
  REQUIRE(two["largest"] == 1);
  REQUIRE(two["connected"] == false);
  REQUIRE(two["sizes_histogram"] == nlohmann::json::parse("[[1,2]]"));

  spit(dir.file("tri.txt"), "3 3 2 0\n0 1\n1 2\n0 2\n");
  const auto tri = call(run_analyze, AnalyzeOptions{dir.file("tri.txt"), true}).json();
  REQUIRE(tri["connected"] == true);
  REQUIRE(tri["near_connected"] == true);
  REQUIRE(tri["coincident_pairs"] == 0);
  REQUIRE(tri["colour_graph_edges"] == 3);
}

TEST_CASE("analyze: error exits", "[cli][analyze][errors]") {
  TempDir dir;
  spit(dir.file("dup.txt"), "2 4 2 0\n0 1\n3 3\n");
  const auto dup = call(run_analyze, AnalyzeOptions{dir.file("dup.txt"), false});
  REQUIRE(dup.code == kExitIo);
  REQUIRE(dup.err.find("line 3") != std::string::npos);
  REQUIRE(dup.err.find("duplicate") != std::string::npos);

  spit(dir.file("k3.txt"), "1 4 3 0\n0 1 2\n");
  REQUIRE(call(run_analyze, AnalyzeOptions{dir.file("k3.txt"), true}).code == kExitDomain);
  REQUIRE(call(run_analyze, AnalyzeOptions{dir.file("k3.txt"), false}).code == kExitOk);
  REQUIRE(call(run_analyze, AnalyzeOptions{dir.file("nope.txt"), false}).code == kExitIo);
}

TEST_CASE("prob: closed forms", "[cli][prob]") {
  const auto a = call(run_prob, ProbOptions{2, 4, 2}).json();
  REQUIRE(a["p_exact"].get<double>() == Catch::Approx(0.833333).margin(1e-6));
  REQUIRE(a["e_isolated"].get<double>() == Catch::Approx(0.333333).margin(1e-6));
  REQUIRE(a["p_approx"].get<double>() == 1.0);
  REQUIRE(a["second_moment_ratio"].get<double>() == Catch::Approx(3.0));
  REQUIRE(a.contains("k2_gap"));

  const auto b = call(run_prob, ProbOptions{1000, 1000, 3}).json();
  REQUIRE(b["ratio"].get<double>() == Catch::Approx(1.3029).margin(1e-4));
  REQUIRE(b["verdict"] == "above");
  REQUIRE_FALSE(b.contains("k2_gap"));
  for (const char* key : {"p_exact", "p_approx", "e_isolated", "ratio", "gap"}) {
    REQUIRE(b.contains(key));
  }

  const auto c = call(run_prob, ProbOptions{10, 3, 2}).json();
  REQUIRE(c["p_exact"].get<double>() == 1.0);
  REQUIRE_FALSE(c.contains("second_moment_ratio"));

  REQUIRE(call(run_prob, ProbOptions{10, 3, 4}).code == kExitDomain);
}

TEST_CASE("plan: planner output", "[cli][plan]") {
  const auto a = call(run_plan, PlanOptions{10000, 100000, 1.2});
  REQUIRE(a.code == kExitOk);
  REQUIRE(a.json()["min_k"] == 11);
  REQUIRE(a.json()["achieved_ratio"].get<double>() >= 1.2);
  REQUIRE(a.err.empty());
  REQUIRE(call(run_plan, PlanOptions{100, 10, 1.0}).json()["min_k"] == 2);

  const auto low = call(run_plan, PlanOptions{10000, 100000, 0.5});
  REQUIRE(low.code == kExitOk);
  REQUIRE(low.err.find("warning") != std::string::npos);
  REQUIRE(low.json().contains("p_exact_at_min_k"));
}

TEST_CASE("oracle: exact fractions", "[cli][oracle]") {
  REQUIRE(call(run_oracle, OracleOptions{2, 4, 2, "connected"}).json()["probability"] == "5/6");
  const auto b = call(run_oracle, OracleOptions{3, 4, 2, "connected"}).json();
  REQUIRE(b["probability"] == "11/12");
  REQUIRE(b["decimal"].get<double>() == Catch::Approx(11.0 / 12.0));
  const auto big = call(run_oracle, OracleOptions{12, 20, 3, "connected"});
  REQUIRE(big.code == kExitDomain);
  REQUIRE(big.err.find("10000000") != std::string::npos);
  REQUIRE(call(run_oracle, OracleOptions{2, 4, 2, "nonsense"}).code == kExitDomain);
}

TEST_CASE("sweep: singleton config matches the cell estimators", "[cli][sweep]") {
  TempDir dir;
  spit(dir.file("one.json"),
       R"({"n_values":[80],"m_rule":{"explicit":[60]},"k_values":[2],"trials":300,"master_seed":4})");
  const auto r = call(run_sweep_command, SweepOptions{dir.file("one.json"), "-", "", {}, 1});
  REQUIRE(r.code == kExitOk);
  const Params cell{80, 60, 2, 4};
  const auto conn = estimate_connectivity(cell, 300);
  const auto iso = estimate_isolated_stats(cell, 300);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  REQUIRE(header == kSweepCsvHeader);
  char buf[64];
  std::snprintf(buf, sizeof buf, "80,60,2,300,%.6f,", conn.point);
  REQUIRE(row.rfind(buf, 0) == 0);
  std::snprintf(buf, sizeof buf, ",%.6f,", iso.no_isolated.point);
  REQUIRE(row.find(buf) != std::string::npos);
}

TEST_CASE("sweep: identical bytes across runs and thread counts", "[cli][sweep][determinism]") {
  TempDir dir;
  const std::string cfg = URIG_DEMO_CONFIG;
  REQUIRE(call(run_sweep_command, SweepOptions{cfg, dir.file("a.csv"), dir.file("a.log"), {}, 1}).code == kExitOk);
  REQUIRE(call(run_sweep_command, SweepOptions{cfg, dir.file("b.csv"), dir.file("b.log"), {}, 4}).code == kExitOk);
  REQUIRE(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
  REQUIRE(slurp(dir.file("a.log")) == slurp(dir.file("b.log")));
  REQUIRE(slurp(dir.file("a.log")).rfind(kTrialCsvHeader, 0) == 0);

  REQUIRE(call(run_sweep_command, SweepOptions{cfg, dir.file("c.csv"), "", 12345, 2}).code == kExitOk);
  REQUIRE(slurp(dir.file("c.csv")) != slurp(dir.file("a.csv")));
}

TEST_CASE("sweep: config errors", "[cli][sweep][errors]") {
  TempDir dir;
  spit(dir.file("bad.json"), R"({"n_values":[10],"m_rule":{"explicit":[3]},"k_values":[5],"trials":3,"master_seed":1})");
  REQUIRE(call(run_sweep_command, SweepOptions{dir.file("bad.json"), "-", "", {}, 1}).code == kExitDomain);
  spit(dir.file("missing.json"), R"({"n_values":[10],"k_values":[2],"trials":3,"master_seed":1})");
  REQUIRE(call(run_sweep_command, SweepOptions{dir.file("missing.json"), "-", "", {}, 1}).code == kExitDomain);
  spit(dir.file("rule.json"), R"({"n_values":[10],"m_rule":{"cubic":2},"k_values":[2],"trials":3,"master_seed":1})");
  REQUIRE(call(run_sweep_command, SweepOptions{dir.file("rule.json"), "-", "", {}, 1}).code == kExitDomain);
  spit(dir.file("junk.json"), "{ not json");
  REQUIRE(call(run_sweep_command, SweepOptions{dir.file("junk.json"), "-", "", {}, 1}).code == kExitIo);
  REQUIRE(call(run_sweep_command, SweepOptions{dir.file("absent.json"), "-", "", {}, 1}).code == kExitIo);
}

TEST_CASE("urig binary: exit codes", "[cli][binary]") {
  TempDir dir;
  REQUIRE(run_binary("--help") == 0);
  REQUIRE(run_binary("prob --n 2 --m 4 --k 2") == 0);
  REQUIRE(run_binary("prob --n 2 --m 4 --k 2 --seed 3") == 0);
  REQUIRE(run_binary("prob --n 2 --m 4 --k 9") == 1);
  REQUIRE(run_binary("prob --n 2 --m 4") == 1);
  REQUIRE(run_binary("frobnicate") == 1);
  REQUIRE(run_binary("gen --n 3 --m 4 --k 2 --out " + dir.file("g.txt")) == 1);  // --seed required
  REQUIRE(run_binary("gen --n 3 --m 4 --k 2 --seed 1 --out " + dir.file("g.txt")) == 0);
  REQUIRE(run_binary("analyze --in " + dir.file("g.txt") + " --colour-graph") == 0);
  REQUIRE(run_binary("gen --n 3 --m 4 --k 2 --seed 1 --out /nonexistent/dir/g.txt") == 2);
  REQUIRE(run_binary("oracle --n 3 --m 4 --k 2 --event connected") == 0);
  REQUIRE(run_binary("plan --n 100 --m 10 --margin 0.5") == 0);
  REQUIRE(run_binary(std::string("sweep --config ") + URIG_DEMO_CONFIG + " --out " +
                     dir.file("s.csv") + " --threads 2 --seed 9") == 0);
}
