#include <doctest.h>

#include <fstream>
#include <sstream>

#include "spr/cli.hpp"
#include "spr/io.hpp"
#include "support.hpp"

using namespace spr;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen writes a valid instance and count-paths enumerates it") {
  const auto dir = spr::testing::temp_dir("cli_gen");
  const std::string inst = (dir / "inst.json").string();
  const auto r = run({"gen", "--cage", "heawood", "--M", "2", "--out", inst});
  CHECK(r.code == 0);
  CHECK(validate_instance(*io::load_instance(inst)).ok());
  CHECK(run({"validate", "--instance", inst}).code == 0);

  const auto c = run({"count-paths", "--instance", inst, "--s", "5"});
  CHECK(c.code == 0);
  CHECK(c.out == "672\n");

  const auto paper = run({"gen", "--cage", "petersen", "--mode", "paper"});
  CHECK(paper.code == 0);
  CHECK(io::Json::parse(paper.out)["params"]["mode"] == "paper");

  const auto sub = run({"gen", "--cage", "petersen", "--terminals", "0,3,7"});
  CHECK(sub.code == 0);
  CHECK(io::Json::parse(sub.out)["attachments"] == io::Json::array({0, 3, 7}));

  const auto rnd = run({"gen", "--random", "30", "--girth", "5", "--seed", "4"});
  CHECK(rnd.code == 0);
  CHECK(rnd.out == run({"gen", "--random", "30", "--girth", "5", "--seed", "4"}).out);
}

TEST_CASE("usage errors exit 64") {
  const auto unknown = run({"gen", "--cage", "heawood", "--bogus"});
  CHECK(unknown.code == 64);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"solve", "--instance", "x.json", "--method", "magic"}).code == 64);
  CHECK(run({"count-paths", "--instance", "x.json"}).code == 64);
  CHECK(run({"gen"}).code == 64);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("bad inputs exit 1") {
  const auto dir = spr::testing::temp_dir("cli_bad");
  CHECK(run({"count-paths", "--instance", (dir / "missing.json").string(), "--s", "2"}).code == 1);
  std::ofstream(dir / "junk.json") << "{ not json";
  CHECK(run({"validate", "--instance", (dir / "junk.json").string()}).code == 1);
  CHECK(run({"gen", "--cage", "heawood", "--g", "7"}).code == 1);
  CHECK(run({"gen", "--random", "15", "--girth", "4"}).code == 1);
}

TEST_CASE("solve, eval, cover and certify pipeline") {
  const auto dir = spr::testing::temp_dir("cli_pipeline");
  const std::string inst = (dir / "inst.json").string();
  const std::string sol = (dir / "sol.json").string();
  REQUIRE(run({"gen", "--cage", "mcgee", "--M", "1", "--L", "7/2", "--out", inst}).code == 0);
  REQUIRE(run({"solve", "--instance", inst, "--method", "voronoi", "--out", sol}).code == 0);
  CHECK(io::read_json(sol)["instance"] == "inst.json");

  const auto ev = run({"eval", "--solution", sol});
  CHECK(ev.code == 0);
  CHECK(io::Json::parse(ev.out)["stretch"]["max_ratio"] == "2");

  const std::string cert = (dir / "cert.json").string();
  CHECK(run({"certify", "--solution", sol, "--out", cert}).code == 0);
  CHECK(io::read_json(cert)["case"] == "many-edges");

  const std::string rep = (dir / "cover.json").string();
  CHECK(run({"cover", "--solution", sol, "--s", "3", "--trials", "500", "--seed", "2", "--out", rep}).code == 0);
  const auto cj = io::read_json(rep);
  CHECK(cj["distribution"]["trials"] == 500);
  CHECK(cj["witness"]["path"]["vertices"].size() == 2);
  const std::string rep4 = (dir / "cover4.json").string();
  CHECK(run({"cover", "--solution", sol, "--s", "3", "--trials", "500", "--seed", "2", "--out", rep4,
             "--threads", "4"})
            .code == 0);
  CHECK(slurp(rep) == slurp(rep4));

  // Complete metric graph: budget violation is invalid input unless waived.
  const std::string metric = (dir / "metric.json").string();
  REQUIRE(run({"solve", "--instance", inst, "--method", "metric", "--out", metric}).code == 0);
  CHECK(run({"eval", "--solution", metric}).code == 1);
  CHECK(run({"certify", "--solution", metric}).code == 1);
  CHECK(run({"certify", "--solution", metric, "--ignore-edge-budget"}).code == 0);
  CHECK(run({"validate", "--instance", inst, "--solution", metric}).code == 1);
}

TEST_CASE("certify exits 2 when preconditions fail") {
  const auto dir = spr::testing::temp_dir("cli_pre");
  const std::string inst = (dir / "inst.json").string();
  const std::string sol = (dir / "sol.json").string();
  REQUIRE(run({"gen", "--cage", "heawood", "--M", "2", "--out", inst}).code == 0);
  REQUIRE(run({"solve", "--instance", inst, "--out", sol}).code == 0);
  const auto r = run({"certify", "--solution", sol});
  CHECK(r.code == 2);
  CHECK(io::Json::parse(r.out)["case"] == "preconditions-unmet");
}

TEST_CASE("brute solver through the CLI") {
  const auto dir = spr::testing::temp_dir("cli_brute");
  const std::string inst = (dir / "c.json").string();
  REQUIRE(run({"gen", "--cage", "petersen", "--terminals", "0,5,7", "--out", inst}).code == 0);
  const auto s = run({"solve", "--instance", inst, "--method", "brute"});
  CHECK(s.code == 0);
  CHECK(io::Json::parse(s.out).contains("clusters"));
}

TEST_CASE("sweep config drives a deterministic CSV") {
  const auto dir = spr::testing::temp_dir("cli_sweep");
  std::ofstream(dir / "sweep.toml") << R"(seed = 3
solvers = ["voronoi", "mst"]

[[instance]]
name = "mcgee"
cage = "mcgee"
M = 1
L = "7/2"

[[instance]]
name = "random"
random = 32
girth = 5
seed = 1
M = 1
L = 3
)";
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  CHECK(run({"sweep", "--config", (dir / "sweep.toml").string(), "--out", a, "--threads", "1"}).code == 0);
  CHECK(run({"sweep", "--config", (dir / "sweep.toml").string(), "--out", b, "--threads", "3"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  std::istringstream lines(slurp(a));
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);

  const std::string plot = (dir / "plot.gp").string();
  CHECK(run({"sweep", "--config", (dir / "sweep.toml").string(), "--out", a, "--plot", plot}).code == 0);
  CHECK(slurp(plot).find("csv = '" + a + "'") != std::string::npos);
  CHECK(run({"sweep", "--config", (dir / "sweep.toml").string(), "--plot", plot}).code == 64);

  std::ofstream(dir / "bad.toml") << "solvers = [";
  CHECK(run({"sweep", "--config", (dir / "bad.toml").string()}).code == 1);
}
