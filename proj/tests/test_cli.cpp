#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "stylomech");
  std::ostringstream out;
  std::ostringstream err;
  const int code = stylomech::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("stylomech_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 1") {
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"report"}).code == 1);
    CHECK(run({"report", "--matrix", "1,2,3"}).code == 1);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("report prints the table") {
    const auto r = run({"report", "--matrix", "54,2,9,16"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.89      0.64      0.74        25") != std::string::npos);
  }

  TEST_CASE("malformed csv exits 2 with the line") {
    const auto dir = scratch("bad");
    std::ofstream(dir / "bad.csv") << "a,b,label\n1,2,1\n1,oops,0\n";
    const auto r = run({"train", "--data", (dir / "bad.csv").string(), "--out", (dir / "m.txt").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    fs::remove_all(dir);
  }

  TEST_CASE("synth, build, train, verify") {
    const auto dir = scratch("flow");
    const auto corpus = (dir / "corpus").string();
    REQUIRE(run({"synth", "--out", corpus, "--authors", "6", "--docs", "4", "--words", "120", "--seed", "3"}).code ==
            0);
    const auto csv = (dir / "pairs.csv").string();
    REQUIRE(run({"build-dataset", "--corpus", corpus, "--out", csv, "--n-same", "30", "--n-diff", "30"}).code == 0);
    const auto model = (dir / "model.txt").string();
    REQUIRE(run({"train", "--data", csv, "--out", model, "--trees", "20"}).code == 0);
    const auto ev = run({"evaluate", "--model", model, "--data", csv});
    CHECK(ev.code == 0);
    CHECK(ev.out.find("accuracy") != std::string::npos);

    const auto a = (fs::path(corpus) / "author0" / "doc0.txt").string();
    const auto b = (fs::path(corpus) / "author0" / "doc1.txt").string();
    const auto v = run({"verify", "--model", model, "--mode", "english", a, b});
    CHECK(v.code == 0);
    CHECK(v.out.find("score=") != std::string::npos);
    CHECK(v.out.find("label=") != std::string::npos);

    CHECK(run({"verify", "--model", (dir / "missing.txt").string(), a, b}).code == 2);
    fs::remove_all(dir);
  }
}
