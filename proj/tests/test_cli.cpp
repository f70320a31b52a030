#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fgr/cli.hpp"
#include "fgr/instances.hpp"

#include "json.hpp"

using namespace fgr;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fgr_cli_test_" + name)).string();
}

std::string write_instance(const std::string& name, const std::vector<std::string>& gen_args) {
  const std::string path = temp_path(name);
  std::vector<std::string> args{"gen", "--out", path};
  args.insert(args.end(), gen_args.begin(), gen_args.end());
  REQUIRE(run(args).code == 0);
  return path;
}

}  // namespace

TEST_CASE("usage errors exit 2 with help on stderr") {
  const auto r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown subcommand frobnicate") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"gen", "--bogus"}).code == 2);
  CHECK(run({"verify", "no-such-campaign"}).code == 2);
  CHECK(run({"gen", "--kind", "nope"}).code == 2);
  CHECK(run({"solve", "--in", temp_path("missing.json")}).code == 2);
}

TEST_CASE("help exits 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("gen is deterministic and parses back") {
  const auto a = run({"gen", "--kind", "exact-tri", "--n", "5", "--weight-bound", "100", "--planted", "1", "--seed", "3"});
  const auto b = run({"gen", "--kind", "exact-tri", "--n", "5", "--weight-bound", "100", "--planted", "1", "--seed", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto g = exact_tri_from_json(json::parse(a.out));
  CHECK(g.part_sizes() == std::array<int, 3>{5, 5, 5});
  CHECK(g.weight_bound() == 100);

  const auto s = run({"gen", "--kind", "3sum", "--n", "6", "--seed", "2"});
  REQUIRE(s.code == 0);
  CHECK(three_sum_from_json(json::parse(s.out)).A().size() == 6);

  const auto anti = run({"gen", "--kind", "antisym", "--n", "4"});
  REQUIRE(anti.code == 0);
  CHECK(exact_tri_from_json(json::parse(anti.out)).antisymmetric());
}

TEST_CASE("solve pipelines agree on a planted instance") {
  const auto path = write_instance("planted.json", {"--parts", "5,6,7", "--weight-bound", "4096", "--planted", "1",
                                                    "--density", "0.5", "--seed", "4"});
  const auto brute = json::parse(run({"solve", "--in", path, "--pipeline", "brute"}).out);
  CHECK(brute["found"] == true);
  for (const std::string p : {"listing", "an", "detect"}) {
    const auto r = run({"solve", "--in", path, "--pipeline", p, "--seed", "9"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["found"] == true);
    if (p == "listing") CHECK(j["witness"] == brute["witness"]);
  }
  const auto det = run({"solve", "--in", path, "--pipeline", "det"});
  REQUIRE(det.code == 0);
  CHECK(json::parse(det.out).contains("table"));
  CHECK(run({"solve", "--in", path, "--pipeline", "wat"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("reduce steps emit json") {
  const auto path = write_instance("reduce.json", {"--n", "4", "--weight-bound", "64", "--planted", "1"});
  for (const std::string to : {"digits", "sparse", "pruned", "halve", "scale4"}) {
    const auto r = run({"reduce", "--in", path, "--to", to});
    REQUIRE(r.code == 0);
    CHECK_FALSE(json::parse(r.out).is_null());
  }
  const auto sparse = json::parse(run({"reduce", "--in", path, "--to", "sparse"}).out);
  CHECK(sparse["q"] == 4);
  CHECK(sparse["graphs"].size() == 9);
  const auto modp = run({"reduce", "--in", path, "--to", "modp", "--t-exponent", "1"});
  REQUIRE(modp.code == 0);
  CHECK(json::parse(modp.out)["p"].get<std::uint64_t>() >= 2);
  std::filesystem::remove(path);
}

TEST_CASE("fewc4 and estimate on an antisymmetric instance") {
  const auto path = write_instance("anti.json", {"--kind", "antisym", "--n", "5", "--weight-bound", "3", "--planted", "1"});
  const auto solve = run({"solve", "--in", path, "--pipeline", "fewc4", "--delta", "1.5"});
  REQUIRE(solve.code == 0);
  CHECK(json::parse(solve.out)["found"] == true);
  const auto est = run({"estimate", "--in", path, "--error", "1"});
  REQUIRE(est.code == 0);
  const auto j = json::parse(est.out);
  CHECK(j["exact"] == true);
  CHECK(j["estimate"].get<double>() == j["brute_count"].get<double>());
  CHECK(run({"estimate", "--in", path, "--pipeline", "odd"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("verify reports pass and are reproducible") {
  const auto a = run({"verify", "digit-identity", "--q", "3"});
  CHECK(a.code == 0);
  CHECK(json::parse(a.out)["passed"] == true);
  const auto b = run({"verify", "equiv-modp", "--n", "6", "--trials", "10", "--seed", "7"});
  const auto c = run({"verify", "equiv-modp", "--n", "6", "--trials", "10", "--seed", "7"});
  CHECK(b.code == 0);
  CHECK(b.out == c.out);
  CHECK(run({"verify", "equiv-modp", "--trials", "0"}).code == 2);
  CHECK(run({"verify", "digit-identity", "--format", "csv"}).code == 2);
}

TEST_CASE("bench writes csv") {
  const auto r = run({"bench", "--kind", "exact-q", "--sizes", "2,4", "--n", "6", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# fgr-bench v1", 0) == 0);
  CHECK(r.out.find("# slope") != std::string::npos);
  CHECK(run({"bench", "--kind", "exact-q", "--sizes", "4,2"}).code == 2);
  CHECK(run({"bench", "--kind", "nope", "--sizes", "2"}).code == 2);
}
