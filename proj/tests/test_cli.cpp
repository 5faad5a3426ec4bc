#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rulingsim/graph.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("rulingsim_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

// Runs the CLI with `args`; stdout/stderr go to files in the work dir.
int cli(const std::string& args, const std::string& env = "RULING_SIM_LOG=off") {
  const std::string cmd = env + " " + RULINGSIM_BIN + " " + args + " >" + path("stdout.txt") + " 2>" +
                          path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rulingsim::Graph load(const std::string& file) { return rulingsim::load_edge_list_file(file); }

}  // namespace

TEST_CASE("gen") {
  CHECK(cli("gen --family tree --n 1000 --seed 1 --out " + path("t.el")) == 0);
  const auto t = load(path("t.el"));
  CHECK(t.node_count() == 1000);
  CHECK(t.edge_count() == 999);
  CHECK(rulingsim::is_forest(t));

  CHECK(cli("gen --family girth7 --n 5000 --target-degree 8 --seed 2 --out " + path("g.el")) == 0);
  CHECK(rulingsim::girth_at_least(load(path("g.el")), 7));

  CHECK(cli("gen --family tree --n 0 --seed 1") == 2);
  CHECK(cli("gen --family tree --n 10") == 2);  // no seed
  CHECK(cli("gen --family hypercube --n 10 --seed 1") == 2);
  CHECK(cli("gen --family girth7 --n 30 --target-degree 20 --seed 1") == 2);

  // Edge list goes to stdout when --out is omitted.
  CHECK(cli("gen --family star-of-stars --d1 3 --d2 2 --seed 1") == 0);
  CHECK(slurp(path("stdout.txt")).rfind("10 9\n", 0) == 0);
  CHECK(cli("gen --family layered --branching 2,3 --seed 1") == 0);
  CHECK(slurp(path("stdout.txt")).rfind("9 8\n", 0) == 0);
}

TEST_CASE("run and verify") {
  REQUIRE(cli("gen --family preferential --n 5000 --seed 3 --out " + path("p.el")) == 0);
  CHECK(cli("run --graph " + path("p.el") + " --algorithm tree2rs --seed 4 --out " + path("r.json") + " --trace " +
            path("trace.jsonl")) == 0);
  const auto j = nlohmann::json::parse(slurp(path("r.json")));
  CHECK(j["schema_version"] == 1);
  CHECK(j["beta_measured"].get<int>() <= 2);
  CHECK(!slurp(path("trace.jsonl")).empty());

  CHECK(cli("verify --graph " + path("p.el") + " --set " + path("r.json") + " --beta 2 --report " + path("rep.json")) == 0);
  CHECK(nlohmann::json::parse(slurp(path("rep.json")))["pass"] == true);

  // A set that is not dominating fails verification with exit 1.
  std::ofstream(path("bad.json")) << "{\"S\": [0]}";
  CHECK(cli("verify --graph " + path("p.el") + " --set " + path("bad.json")) == 1);
  std::ofstream(path("range.json")) << "{\"S\": [999999]}";
  CHECK(cli("verify --graph " + path("p.el") + " --set " + path("range.json")) == 2);
  CHECK(cli("verify --graph " + path("missing.el") + " --set " + path("r.json")) == 2);

  REQUIRE(cli("gen --family cycle --n 9 --seed 1 --out " + path("c.el")) == 0);
  CHECK(cli("run --graph " + path("c.el") + " --algorithm tree2rs --seed 1") == 2);
  CHECK(cli("run --graph " + path("c.el") + " --algorithm fast_delta_tree2rs --seed 1") == 2);
  CHECK(cli("run --graph " + path("c.el") + " --algorithm girth2rs --seed 1") == 0);  // C9 has girth 9
  REQUIRE(cli("gen --family cycle --n 5 --seed 1 --out " + path("c5.el")) == 0);
  CHECK(cli("run --graph " + path("c5.el") + " --algorithm girth2rs --seed 1") == 2);

  REQUIRE(cli("gen --family girth7 --n 4096 --target-degree 4 --seed 5 --out " + path("g4.el")) == 0);
  CHECK(cli("run --graph " + path("g4.el") + " --algorithm girth2rs --cleanup exact_mis --seed 1") == 0);
  CHECK(cli("run --graph " + path("g4.el") + " --algorithm girth_relaxed_rs --seed 1") == 0);
  CHECK(cli("run --graph " + path("g4.el") + " --algorithm girth2rs --delta-small 12 --phase2-cutoff delta_star_34 --seed 1") == 0);
  CHECK(cli("run --graph " + path("g4.el") + " --algorithm nope --seed 1") == 2);
  CHECK(cli("run --graph " + path("g4.el") + " --algorithm girth2rs --delta-small log^ --seed 1") == 2);
  CHECK(cli("run --graph " + path("g4.el") + " --algorithm girth2rs") == 2);
}

TEST_CASE("run output is byte-identical across reruns") {
  REQUIRE(cli("gen --family preferential --n 3000 --seed 8 --out " + path("d.el")) == 0);
  REQUIRE(cli("run --graph " + path("d.el") + " --seed 9 --out " + path("d1.json")) == 0);
  REQUIRE(cli("run --graph " + path("d.el") + " --seed 9 --out " + path("d2.json")) == 0);
  CHECK(slurp(path("d1.json")) == slurp(path("d2.json")));
}

TEST_CASE("mc") {
  CHECK(cli("mc --lemma conditional-prob --k 2 --l 3 --samples 200000 --seed 1") == 0);
  const std::string csv = slurp(path("stdout.txt"));
  CHECK(csv.find("2,3,200000,") != std::string::npos);
  CHECK(csv.find(",0.142857143,") != std::string::npos);

  CHECK(cli("mc --lemma min-cdf --k 1,2 --samples 100000 --seed 1 --out " + path("ks.csv")) == 0);
  CHECK(slurp(path("ks.csv")).rfind("k,samples,ks_statistic,critical_99,pass\n", 0) == 0);
  CHECK(cli("mc --lemma conditional-density --k 1 --samples 100000 --tolerance 0.05 --seed 1") == 0);
  CHECK(cli("mc --lemma uncovered --family star --delta 64 --trials 500 --seed 1") == 0);
  CHECK(cli("mc --lemma min-cdf --k 2") == 2);
  CHECK(cli("mc --lemma nope --seed 1") == 2);
  CHECK(cli("mc --lemma min-cdf --samples 10 --seed 1") == 2);
}

TEST_CASE("scale") {
  CHECK(cli("scale --family tree --n 1024..4096 --trials 2 --seed 1 --out " + path("s1.csv")) == 0);
  CHECK(cli("scale --family tree --n 1024..4096 --trials 2 --seed 1 --jobs 2 --out " + path("s2.csv")) == 0);
  const std::string a = slurp(path("s1.csv"));
  CHECK(a == slurp(path("s2.csv")));
  std::size_t lines = 0;
  for (char c : a) lines += c == '\n';
  CHECK(lines == 1 + 3 * 2);
  CHECK(cli("scale --family tree --n 1024..4096 --trials 2") == 2);
  CHECK(cli("scale --family tree --n 4096,1024 --trials 2 --seed 1") == 2);
}

TEST_CASE("log levels") {
  REQUIRE(cli("gen --family tree --n 50 --seed 1 --out " + path("small.el")) == 0);
  CHECK(cli("run --graph " + path("small.el") + " --seed 1 --out " + path("o.json"), "RULING_SIM_LOG=trace") == 0);
  CHECK(slurp(path("stderr.txt")).find("\"phase\"") != std::string::npos);
  CHECK(cli("run --graph " + path("small.el") + " --seed 1 --out " + path("o.json"), "RULING_SIM_LOG=off") == 0);
  CHECK(slurp(path("stderr.txt")).empty());
  CHECK(cli("--help") == 0);
  fs::remove_all(workdir());
}
