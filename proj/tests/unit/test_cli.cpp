#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace wordwait::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) v.push_back(cell);
  return v;
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "wordwait_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("every command runs with small settings") {
  for (const auto& name : command_names()) {
    CAPTURE(name);
    const auto o = call({name, "--reps", "40", "--seed", "3"});
    CHECK(o.code == kExitOk);
    CHECK(o.out.rfind("# command=" + name + "\n", 0) == 0);
  }
}

TEST_CASE("header carries seed and parameters but not threads") {
  const auto o = call({"fig1", "--reps", "30", "--seed", "77", "--threads", "2"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("# seed=77\n") != std::string::npos);
  CHECK(o.out.find("# N=10000\n") != std::string::npos);
  CHECK(o.out.find("# reps=30\n") != std::string::npos);
  CHECK(o.out.find("thread") == std::string::npos);
}

TEST_CASE("output does not depend on the thread count") {
  for (const std::vector<std::string> base :
       {std::vector<std::string>{"fig1", "--reps", "300"},
        std::vector<std::string>{"table4", "--reps", "60", "--words", "AACCGT,ACAGCTGT"},
        std::vector<std::string>{"fig3", "--reps", "200"}}) {
    auto one = base, many = base;
    one.insert(one.end(), {"--threads", "1"});
    many.insert(many.end(), {"--threads", "5"});
    const auto a = call(one), b = call(many);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("CSV and JSON carry the same values") {
  const auto csv = call({"table1"});
  const auto json = call({"table1", "--format", "json"});
  REQUIRE(csv.code == 0);
  REQUIRE(json.code == 0);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["command"] == "table1");
  CHECK(doc["params"]["seed"] == "1");
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines(csv.out)) {
    if (!line.empty() && line[0] != '#') rows.push_back(split(line));
  }
  REQUIRE(rows.size() == 3);
  REQUIRE(doc["columns"].size() == rows[0].size());
  for (std::size_t c = 0; c < rows[0].size(); ++c) CHECK(doc["columns"][c] == rows[0][c]);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      CHECK(doc["rows"][r - 1][c].get<double>() == std::stod(rows[r][c]));
    }
  }
  CHECK(std::stod(rows[1][2]) == doctest::Approx(4420.575));
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"nosuch"}).code == kExitUsage);
  CHECK(call({"table1", "--bogus"}).code == kExitUsage);
  CHECK(call({"table1", "--format", "xml"}).code == kExitUsage);
  CHECK(call({"table1", "--N", "-3"}).code == kExitUsage);
  CHECK(call({"table3", "--W", "7"}).code == kExitUsage);
  CHECK(call({"table2", "--words", "ACGN"}).code == kExitUsage);
  const auto cap = call({"fig1", "--reps", "3", "--step-cap", "2"});
  CHECK(cap.code == kExitStepCap);
  CHECK(cap.err.find("step cap") != std::string::npos);
  const auto inf = call({"approx3", "--mu", "0"});
  CHECK(inf.code == kExitNumerical);
  CHECK(call({"selftest"}).code == kExitOk);
  CHECK(call({"--help"}).code == kExitOk);
}

TEST_CASE("config files fill unset options") {
  const auto dir = scratch();
  const auto cfg = dir / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "# comment\n\nseed=42\nreps=25\nN=5000\n";
  }
  const auto o = call({"fig1", "--config", cfg.string(), "--N", "20000"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("# seed=42\n") != std::string::npos);
  CHECK(o.out.find("# reps=25\n") != std::string::npos);
  CHECK(o.out.find("# N=20000\n") != std::string::npos);

  RunConfig rc;
  rc.seed = 9;
  apply_config_file(cfg.string(), rc);
  CHECK(*rc.seed == 9);
  CHECK(*rc.reps == 25);

  {
    std::ofstream f(cfg);
    f << "colour=blue\n";
  }
  CHECK(call({"table1", "--config", cfg.string()}).code == kExitUsage);
  {
    std::ofstream f(cfg);
    f << "reps=many\n";
  }
  CHECK(call({"table1", "--config", cfg.string()}).code == kExitUsage);
  CHECK(call({"table1", "--config", (dir / "absent.cfg").string()}).code == kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto dir = scratch();
  const auto path = dir / "t6.json";
  const auto direct = call({"table6", "--format", "json"});
  const auto o = call({"table6", "--format", "json", "--out", path.string()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == direct.out);
  CHECK(call({"table6", "--out", (dir / "no" / "such" / "x.csv").string()}).code == kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("resolved defaults") {
  RunConfig c;
  c.command = "table5";
  auto p = resolve(c);
  CHECK(p.population.L == 1000);
  CHECK(p.bin == 10);
  CHECK(p.reps == 100000);
  c.command = "table4";
  p = resolve(c);
  CHECK(p.population.L == 1024);
  CHECK(p.bin == 100);
  c.command = "table1";
  p = resolve(c);
  CHECK(p.word_lengths == std::vector<int>{6, 8});
  CHECK(p.seed == 1);
  c.form = "sideways";
  CHECK_THROWS_AS(resolve(c), std::invalid_argument);
}

TEST_CASE("selected words and the word-length filter") {
  const auto o = call({"table3", "--words", "ACGTACGA,AACCGT"});
  REQUIRE(o.code == 0);
  CHECK(o.out.find("\nACGTACGA,8,") != std::string::npos);
  CHECK(o.out.find("\nAACCGT,6,") != std::string::npos);
  CHECK(call({"table3", "--words", "ACGTACGA,AACCGT", "--W", "8"}).code == kExitUsage);
  CHECK(call({"table3", "--words", "ACGTACGA", "--W", "8"}).code == kExitOk);
  const auto single = call({"table2", "--word", "ACACAC"});
  CHECK(single.code == 0);
}
