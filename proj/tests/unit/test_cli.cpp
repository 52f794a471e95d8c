#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "drsit/io.hpp"

using namespace drsit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "drsit");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string dir() {
  const auto d = std::filesystem::temp_directory_path() / "drsit_cli";
  std::filesystem::create_directories(d);
  return d.string() + "/";
}

std::vector<std::string> small_generate(const std::string& tag) {
  return {"generate", "--m", "3", "--timesteps", "60", "--trajectories", "5", "--hidden", "8", "--seed", "7",
          "--out", dir() + tag + ".csv", "--truth", dir() + tag + ".truth"};
}

}  // namespace

TEST_CASE("generate is byte-deterministic") {
  REQUIRE(invoke(small_generate("a")).code == 0);
  REQUIRE(invoke(small_generate("b")).code == 0);
  CHECK(read_text_file(dir() + "a.csv") == read_text_file(dir() + "b.csv"));
  CHECK(read_text_file(dir() + "a.truth") == read_text_file(dir() + "b.truth"));
}

TEST_CASE("negative nsr exits 2 naming the field") {
  auto args = small_generate("bad");
  args.insert(args.end(), {"--nsr", "-1"});
  const Run r = invoke(args);
  CHECK(r.code == 2);
  CHECK(r.err.find("nsr") != std::string::npos);
}

TEST_CASE("unknown flags and missing subcommand exit 2") {
  CHECK(invoke({"generate", "--bogus"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("discover then evaluate") {
  REQUIRE(invoke(small_generate("p")).code == 0);
  const Run d = invoke({"discover", "--panel", dir() + "p.csv", "--target", "Y", "--lag", "2", "--folds", "5",
                        "--alpha", "0.05", "--seed", "7", "--out", dir() + "p.json"});
  REQUIRE(d.code == 0);
  const auto reports = read_report(dir() + "p.json");
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].edges.size() == 3);

  const Run e = invoke({"evaluate", "--report", dir() + "p.json", "--truth", dir() + "p.truth", "--out",
                        dir() + "p_metrics.csv"});
  CHECK(e.code == 0);
  CHECK(e.out.find("accuracy") != std::string::npos);
  CHECK(read_text_file(dir() + "p_metrics.csv").rfind("accuracy,f1,csi,auroc", 0) == 0);
}

TEST_CASE("evaluate with a perfect report scores 1") {
  REQUIRE(invoke(small_generate("q")).code == 0);
  REQUIRE(invoke({"discover", "--panel", dir() + "q.csv", "--out", dir() + "q.json"}).code == 0);
  auto reports = read_report(dir() + "q.json");
  const GroundTruth truth = read_truth(dir() + "q.truth");
  const auto parents = truth.structure.target_parents();
  for (auto& e : reports[0].edges) {
    e.selected = parents[e.candidate - 1];
    e.ranking_score = e.selected ? 1.0 : 0.0;
  }
  write_report(reports, dir() + "perfect.json");
  const Run e = invoke({"evaluate", "--report", dir() + "perfect.json", "--truth", dir() + "q.truth"});
  REQUIRE(e.code == 0);
  CHECK(e.out.find("accuracy 1.000000") != std::string::npos);
  CHECK(e.out.find("f1 1.000000") != std::string::npos);
  CHECK(e.out.find("csi 1.000000") != std::string::npos);

  for (auto& e2 : reports[0].edges) e2.selected = false;
  write_report(reports, dir() + "none.json");
  write_text_file(dir() + "empty.truth", "# drsit truth v1\n# no edges\nvariables Y X1 X2 X3\ntarget Y\ndelta 2\n");
  const Run empty = invoke({"evaluate", "--report", dir() + "none.json", "--truth", dir() + "empty.truth"});
  REQUIRE(empty.code == 0);
  CHECK(empty.out.find("accuracy 1.000000") != std::string::npos);
  CHECK(empty.out.find("f1 1.000000") != std::string::npos);
  CHECK(empty.out.find("auroc nan") != std::string::npos);
}

TEST_CASE("evaluate rejects mismatched variable names") {
  REQUIRE(invoke(small_generate("r")).code == 0);
  REQUIRE(invoke({"discover", "--panel", dir() + "r.csv", "--out", dir() + "r.json"}).code == 0);
  write_text_file(dir() + "other.truth", "# drsit truth v1\n#\nvariables Y A B C\ntarget Y\ndelta 2\n");
  CHECK(invoke({"evaluate", "--report", dir() + "r.json", "--truth", dir() + "other.truth"}).code == 2);
}

TEST_CASE("discover error codes") {
  CHECK(invoke({"discover", "--panel", dir() + "nope.csv"}).code == 3);
  REQUIRE(invoke(small_generate("s")).code == 0);
  CHECK(invoke({"discover", "--panel", dir() + "s.csv", "--target", "Z"}).code == 2);
  CHECK(invoke({"discover", "--panel", dir() + "s.csv", "--lag", "100"}).code == 2);
  CHECK(invoke({"discover", "--panel", dir() + "s.csv", "--masking", "blur"}).code == 2);
}

TEST_CASE("config file supplies options and flags override it") {
  write_text_file(dir() + "gen.toml", "[generate]\nm = 2\ntimesteps = 40\ntrajectories = 5\nhidden = 4\nseed = 3\n");
  const Run r = invoke({"--config", dir() + "gen.toml", "generate", "--seed", "5", "--out", dir() + "cfg.csv",
                        "--truth", dir() + "cfg.truth"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("m=2") != std::string::npos);
  CHECK(r.out.find("seed=5") != std::string::npos);
}

TEST_CASE("benchmark writes rows, resumes and rejects zero seeds") {
  const std::string csv = dir() + "bench.csv";
  std::filesystem::remove(csv);
  const std::vector<std::string> base{"benchmark", "--m-list", "3", "--nsr-list", "0.1", "--timesteps", "40",
                                      "--hidden", "8", "--out", csv};
  auto args = base;
  args.insert(args.end(), {"--seeds", "2"});
  REQUIRE(invoke(args).code == 0);
  const std::string first = read_text_file(csv);
  CHECK(std::count(first.begin(), first.end(), '\n') == 3);

  args.push_back("--resume");
  const Run again = invoke(args);
  CHECK(again.code == 0);
  CHECK(read_text_file(csv) == first);

  auto zero = base;
  zero.insert(zero.end(), {"--seeds", "0"});
  CHECK(invoke(zero).code == 2);
}
