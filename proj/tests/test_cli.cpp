#include "chebias/app.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

using namespace chebias;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run_config(const RunConfig& c) {
  std::ostringstream out, err;
  Result r;
  r.code = run(c, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CHEBIAS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("chebias_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig mod4(const std::string& command) {
  RunConfig c;
  c.command = command;
  c.family = "cyclotomic";
  c.params = {4};
  c.t = "race:3,1";
  c.zeros = "bundled";
  c.samples = 100000;
  return c;
}

}  // namespace

TEST_CASE("table prints the radical conductor CSV") {
  RunConfig c;
  c.command = "table";
  c.family = "radical";
  c.params = {3, 5};
  auto r = run_config(c);
  CHECK(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "character,degree,n_3,n_5,logA");
  CHECK(lines[5].rfind("eta,4,4,5,", 0) == 0);
  CHECK(r.out.find("# config_hash: ") != std::string::npos);
  CHECK(r.out.find("# assumptions: AC,GRH,LI,BM(M0=1)") != std::string::npos);
}

TEST_CASE("table for a bare group") {
  RunConfig c;
  c.command = "table";
  c.family = "symmetric";
  c.params = {6};
  auto r = run_config(c);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("1.1.1.1.1.1,1,-75\n") != std::string::npos);
  CHECK(r.out.find("3.2.1,120,1\n") != std::string::npos);
  c.command = "bias";
  CHECK(run_config(c).code == kExitConfig);
}

TEST_CASE("density reports three routes") {
  auto r = run_config(mod4("density"));
  REQUIRE(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].rfind("model,mean,variance,B,delta_inversion,err_inversion,delta_mc,se_mc,delta_gauss", 0) == 0);
  std::vector<std::string> f;
  std::stringstream row(lines[1]);
  for (std::string cell; std::getline(row, cell, ',');) f.push_back(cell);
  // the model id itself contains a comma
  REQUIRE(f.size() == 14);
  const double inv = std::stod(f[5]), mc = std::stod(f[7]), se = std::stod(f[8]);
  CHECK(inv > 0.99);
  CHECK(std::abs(inv - mc) <= std::max(3 * se, 5e-3));
  CHECK(r.out.find("# truncation_height: 1200") != std::string::npos);
}

TEST_CASE("exit codes") {
  RunConfig c = mod4("density");
  c.family = "nope";
  CHECK(run_config(c).code == kExitConfig);
  c = mod4("frobnicate");
  CHECK(run_config(c).code == kExitConfig);
  c = mod4("density");
  c.assume = "li,xyz";
  CHECK(run_config(c).code == kExitConfig);
  RunConfig rad;
  rad.command = "bias";
  rad.family = "radical";
  rad.params = {3, 5};
  rad.t = "race:U,id";
  rad.zeros = "bundled";
  CHECK(run_config(rad).code == kExitData);
  RunConfig spec;
  spec.command = "bias";
  spec.family = "spec";
  spec.spec_file = "/nonexistent/file.spec";
  CHECK(run_config(spec).code == kExitData);
  const auto dir = temp_dir("exit");
  {
    std::ofstream f(dir / "bad.spec");
    f << "family custom\ngroup cyclic 2\nlogdisc 1\nprime 3\nfiltration 0 0 5\n";
  }
  spec.spec_file = (dir / "bad.spec").string();
  CHECK(run_config(spec).code == kExitInvariant);
  fs::remove_all(dir);
}

TEST_CASE("binary exit codes and config files") {
  CHECK(run_binary("") == kExitConfig);
  CHECK(run_binary("table --family nope") == kExitConfig);
  CHECK(run_binary("bias --family radical --a 3 --p 5 --t race:U,id --zeros bundled") == kExitData);
  CHECK(run_binary("table --family radical --a 3 --p 5") == kExitOk);
  const auto dir = temp_dir("config");
  {
    std::ofstream f(dir / "run.ini");
    f << "# mod 4 race\n[default]\nfamily = cyclotomic\nparams = 4\nt = race:3,1\nzeros = bundled\nout = "
      << (dir / "out").string() << "\n";
  }
  CHECK(run_binary("--config " + (dir / "run.ini").string() + " bias") == kExitOk);
  const auto text = slurp(dir / "out" / "bias.csv");
  CHECK(text.find("cyclotomic(4)/race:3,1,2,") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "support.csv"));
  fs::remove_all(dir);
}

TEST_CASE("validate runs the built-in suite") {
  RunConfig c;
  c.command = "validate";
  auto r = run_config(c);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(data_lines(r.out).size() >= 10);
}

TEST_CASE("plot tables") {
  std::ostringstream empty;
  write_race_csv(empty, {}, {});
  CHECK(empty.str() == "y,E,running_density\n");

  auto c = mod4("race");
  c.xmax = 1e5;
  c.checkpoints = 150;
  const auto dir = temp_dir("plot");
  c.out = dir.string();
  auto r = run_config(c);
  REQUIRE(r.code == kExitOk);
  CHECK(data_lines(slurp(dir / "race.csv")).size() == 151);
  CHECK(r.out.find("# empirical_density: ") != std::string::npos);

  c = mod4("density");
  c.out = dir.string();
  c.phi_points = 11;
  REQUIRE(run_config(c).code == kExitOk);
  const auto phi = data_lines(slurp(dir / "phi.csv"));
  REQUIRE(phi.size() == 12);
  CHECK(phi[0] == "xi,abs_phi");
  CHECK(phi[1] == "0,1");
  fs::remove_all(dir);
}

TEST_CASE("outputs do not depend on the worker count") {
  for (const char* cmd : {"density", "race", "validate"}) {
    CAPTURE(cmd);
    auto c = mod4(cmd);
    c.xmax = 1e6;
    c.workers = 1;
    const auto a = run_config(c);
    c.workers = 3;
    const auto b = run_config(c);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
  RunConfig a, b;
  a.workers = 1;
  b.workers = 8;
  CHECK(a.hash() == b.hash());
  b.seed = 2;
  CHECK(a.hash() != b.hash());
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}
