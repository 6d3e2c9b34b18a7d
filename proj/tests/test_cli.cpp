#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(AMBIGAL_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, f)) out.append(buf, n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path scratch() {
  auto d = fs::temp_directory_path() / ("ambigal_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("decompose") {
  auto r = run("decompose --e0 1 --breaks 1,3,7 --i 0 --normalize");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["case"] == "A");
  CHECK(j["normalized"] == json({{"R0", 1}, {"R1", 1}, {"R2", 1}, {"R3", 1}}));
  CHECK(j["modules"] == json({{"M", 1}, {"R3", 1}}));
  CHECK(j["rank"] == 8);
  CHECK(j["char"] == json({1, 1, 1, 1}));

  j = json::parse(run("decompose --e0 1 --breaks 1,3,7 --i 1").out);
  CHECK(j["modules"] == json({{"H2", 1}}));

  // byte-identical on repeat
  CHECK(run("decompose --e0 3 --breaks 1,5,19 --i 7").out == run("decompose --e0 3 --breaks 1,5,19 --i 7").out);

  CHECK(run("decompose --e0 4 --breaks 1,3,17 --i 0").code == 2);
  CHECK(run("decompose --e0 2 --breaks 2,6 --i 0").code == 2);
}

TEST_CASE("classify and validate") {
  auto r = run("classify --e0 4 --breaks 1,3,11");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out) == json({{"case", "H"}, {"stable", false}}));

  r = run("validate --e0 4 --breaks 1,3,17");
  CHECK(r.code == 2);
  CHECK(json::parse(r.out) == json({{"ok", false}, {"violations", {"b3 not in admissible set"}}}));

  r = run("validate --e0 1 --breaks 1,3,7");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["ok"] == true);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("decompose --e0 1 --breaks 1,3,7").code == 1);
  CHECK(run("classify --e0 x --breaks 1,3,7").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("sweep") {
  auto dir = scratch();
  const std::array<int, 4> want = {1, 3, 7, 23};
  for (int n = 0; n <= 3; ++n) {
    auto out = dir / ("s" + std::to_string(n) + ".jsonl");
    auto r = run("sweep --n " + std::to_string(n) + " --e0-max 8 --out " + out.string());
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["distinct"] == want[n]);
    auto side = json::parse(slurp(out.string() + ".summary.json"));
    CHECK(side["distinct"] == want[n]);
    CHECK(side["failures"] == 0);
  }
  CHECK(json::parse(run("sweep --n 2 --e0-max 4 --out " + (dir / "a.jsonl").string()).out)["distinct"] == 7);
  CHECK(json::parse(run("sweep --n 1 --e0-max 2 --out " + (dir / "b.jsonl").string()).out)["distinct"] == 3);

  // record layout and order
  std::ifstream is(dir / "s3.jsonl");
  std::string line;
  REQUIRE(std::getline(is, line));
  auto first = json::parse(line);
  CHECK(first["profile"]["breaks"] == json({1, 3, 7}));
  CHECK(first["i"] == 0);
  CHECK(first["raw"] == json({{"M", 1}, {"R3", 1}}));
  CHECK(first["oracle_status"] == "agree");
  long lines = 1;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 8392);

  // worker count does not change the bytes
  auto a = dir / "t1.jsonl", b = dir / "t5.jsonl";
  run("sweep --n 3 --e0-max 5 --out " + a.string());
  ::setenv("AMBIGAL_THREADS", "5", 1);
  run("sweep --n 3 --e0-max 5 --out " + b.string());
  ::unsetenv("AMBIGAL_THREADS");
  CHECK(slurp(a) == slurp(b));

  auto bad = run("sweep --n 3 --e0-max 2 --out " + (dir / "missing" / "x.jsonl").string());
  CHECK(bad.code == 1);
  CHECK_FALSE(fs::exists(dir / "missing" / "x.jsonl"));

  fs::remove_all(dir);
}

TEST_CASE("verify") {
  auto dir = scratch();
  auto rep = dir / "report.json";
  auto r = run("verify --e0-max 6 --report " + rep.string());
  CHECK(r.code == 0);
  auto j = json::parse(slurp(rep));
  CHECK(j["ok"] == true);
  bool informational_failed = false;
  for (auto& s : j["suites"]) {
    if (s["informational"] == true) informational_failed = informational_failed || s["pass"] == false;
    else CHECK(s["pass"] == true);
  }
  CHECK(informational_failed);
  CHECK(j["cells"].size() == 11);
  for (auto& c : j["cells"]) CHECK(c["resolved"] == true);
  fs::remove_all(dir);
}
