#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KOHNEN_CLI) + " " + args + " 2>&1";
  Run r{0, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "kohnen_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("form build and check") {
  const auto dir = scratch();
  const auto form = dir / "f.json";
  auto r = run("--out " + form.string() + " form build --ell 6 --prec 2000");
  CHECK(r.status == 0);
  CHECK(fs::exists(form));
  CHECK(fs::exists(dir / "f.json.manifest.json"));
  r = run("--out " + (dir / "check.csv").string() + " form check --form " + form.string());
  CHECK(r.status == 0);
  CHECK(slurp(dir / "check.csv").rfind("p,eigenvalue,checked,ok\r\n", 0) == 0);
}

TEST_CASE("seeded identity checks are reproducible") {
  const auto dir = scratch();
  for (const char* name : {"a.csv", "b.csv"}) {
    const auto r = run("--seed 42 --out " + (dir / name).string() + " vaughan verify --r 2 --trials 1000");
    CHECK(r.status == 0);
  }
  const auto a = slurp(dir / "a.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b.csv"));
}

TEST_CASE("precision errors name the usable range") {
  const auto dir = scratch();
  const auto form = dir / "small.json";
  REQUIRE(run("--out " + form.string() + " form build --ell 6 --prec 5000").status == 0);
  const auto r = run("--out " + (dir / "s.csv").string() + " sums partial --form " + form.string() + " --xmax 10^7");
  CHECK(r.status == 3);
  CHECK(r.output.find("max usable x") != std::string::npos);
}

TEST_CASE("malformed input is rejected") {
  const auto dir = scratch();
  const auto bad = dir / "bad.json";
  {
    std::ofstream(bad) << R"({"ell":6,"weight":"13/2","level":4,"precision":10,"coeffs":[[1,"1"],[2,"5"]]})";
  }
  auto r = run("--out " + (dir / "x.csv").string() + " form check --form " + bad.string());
  CHECK(r.status == 2);
  {
    std::ofstream(bad) << R"({"ell":6,"weight":"13/2","level":4,"coeffs":[[1,"1"]]})";
  }
  r = run("--out " + (dir / "x.csv").string() + " form check --form " + bad.string());
  CHECK(r.status == 2);
  CHECK(r.output.find("precision") != std::string::npos);
  CHECK(run("--out x.csv form build --ell 6 --prec 100 --bogus").status == 2);
  CHECK(run("--out " + (dir / "x.csv").string() + " lvalue central --D 9 --T 1000").status == 2);
}
