#include "doctest.h"

#include "susyhydra/susyhydra.h"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string cli() {
  const char *p = std::getenv("SUSYHYDRA_CLI");
  REQUIRE_MESSAGE(p != nullptr, "SUSYHYDRA_CLI is not set");
  return p;
}

Run run(const std::string &args) {
  const std::string cmd = cli() + " " + args + " 2>/dev/null";
  FILE *f = ::popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0)
    r.out.append(buf, n);
  const int status = ::pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv(const std::string &text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

struct ScratchDir {
  fs::path dir = fs::temp_directory_path() / ("susyhydra_cli_test_" + std::to_string(::getpid()));
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path scratch(const std::string &name) {
  static ScratchDir d;
  fs::create_directories(d.dir);
  return d.dir / name;
}

const std::string kFig1 = "--l 1 --k 0.1+0.5i --alpha 1 --zeta 0";
const std::string kFig2 = "--l 1 --k 0.1+0.5i --alpha 1 --zeta 0.5+0.5i";

} // namespace

TEST_CASE("classify and exit codes") {
  auto r = run(kFig1 + " classify");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["case"] == "A");
  r = run(kFig2 + " classify");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["case"] == "D");
  CHECK(j["in_c0"] == "yes");
  CHECK(run("--k 0.5 classify").code == 1);
  CHECK(run("--k abc classify").code == 1);
  CHECK(run(kFig1 + " nonsense").code == 1);
  CHECK(run(kFig2 + " potential --order 2").code == 1);
  CHECK(run(kFig1 + " state mapped --kappa 0.1+0.5i").code == 1);
}

TEST_CASE("verify exit codes") {
  auto r = run(kFig1 + " verify --suite factorization");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["pass"] == true);
  // too coarse for the eigen-residual tolerances
  r = run(kFig1 + " --nodes 60 --rmin 1e-2 --rmax 50 verify --suite spectra");
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.out)["pass"] == false);
  CHECK(run(kFig1 + " verify --suite nonsense").code == 1);
}

TEST_CASE("config file with flag overrides") {
  const auto path = scratch("fig2.cfg");
  {
    std::ofstream f(path);
    f << "# figure 2\nl = 1\nk=0.1+0.5i\nalpha=1\nzeta=0.5+0.5i\n";
  }
  CHECK(nlohmann::json::parse(run("--config " + path.string() + " classify").out)["case"] == "D");
  CHECK(nlohmann::json::parse(run("--config " + path.string() + " --zeta 0 classify").out)["case"] ==
        "A");
  const auto bad = scratch("bad.cfg");
  {
    std::ofstream f(bad);
    f << "l=1\nwidth=3\n";
  }
  CHECK(run("--config " + bad.string() + " classify").code == 1);
  {
    std::ofstream f(bad);
    f << "l=1\nk 0.1+0.5i\n";
  }
  CHECK(run("--config " + bad.string() + " classify").code == 1);
  CHECK(run("--config " + (path.string() + ".missing") + " classify").code == 1);
}

TEST_CASE("CSV output round-trips the engine's doubles") {
  const auto r = run(kFig2 + " --rmin 1e-3 --rmax 80 --nodes 300 potential");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 301);
  CHECK(rows[0] == std::vector<std::string>{"r", "vre", "vim"});

  shy_config *c = nullptr;
  REQUIRE(shy_config_create(1, {0.1, 0.5}, {1, 0}, {0.5, 0.5}, 0, &c) == SHY_OK);
  shy_grid *g = nullptr;
  REQUIRE(shy_grid_create(1e-3, 80.0, 300, &g) == SHY_OK);
  shy_state *s = nullptr;
  REQUIRE(shy_partner_potential(c, g, &s) == SHY_OK);
  std::vector<double> rr(300);
  std::vector<shy_complex> v(300);
  REQUIRE(shy_state_samples(s, rr.data(), v.data(), 300) == SHY_OK);
  for (std::size_t i = 0; i < 300; ++i) {
    CHECK(std::strtod(rows[i + 1][0].c_str(), nullptr) == rr[i]);
    CHECK(std::strtod(rows[i + 1][1].c_str(), nullptr) == v[i].re);
    CHECK(std::strtod(rows[i + 1][2].c_str(), nullptr) == v[i].im);
  }
  shy_state_free(s);
  shy_grid_free(g);
  shy_config_free(c);
}

TEST_CASE("output is deterministic") {
  const std::string args = kFig2 + " --nodes 400 state mapped 3";
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto path = scratch("mapped.csv");
  REQUIRE(run(args + " -o " + path.string()).code == 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == a.out);
}

TEST_CASE("states and figures") {
  auto r = run(kFig1 + " --nodes 200 state bound 3");
  REQUIRE(r.code == 0);
  CHECK(csv(r.out)[0] == std::vector<std::string>{"r", "re", "im", "abs2"});
  CHECK(run(kFig2 + " --nodes 200 state kernel").code == 0);
  CHECK(run(kFig1 + " --nodes 200 state mapped --kappa 0.3+0.2i --C 1 --D 0").code == 0);
  CHECK(run("--l 1 --k 0.01+1i --nodes 200 state second 2").code == 0);
  CHECK(run(kFig1 + " state unknown").code == 1);

  const std::vector<std::pair<std::string, std::vector<std::string>>> figs = {
      {"fig1a", {"r", "v_ref", "v_re", "v_im"}},
      {"fig1b", {"r", "abs2_bound", "abs2_mapped"}},
      {"fig2a", {"r", "v_ref", "v_re", "v_im"}},
      {"fig2b", {"r", "abs2_kernel"}},
      {"fig3a", {"r", "v_base", "v_tilde"}},
      {"fig3b", {"r", "v_base", "v_tilde"}}};
  for (const auto &[name, cols] : figs) {
    r = run("--nodes 300 " + name);
    INFO(name);
    REQUIRE(r.code == 0);
    const auto rows = csv(r.out);
    CHECK(rows[0] == cols);
    CHECK(rows.size() == 301);
  }
  r = run("--nodes 50 --format json fig2b");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["columns"] == nlohmann::json({"r", "abs2_kernel"}));
  CHECK(j["rows"].size() == 50);
  CHECK(run("--format xml fig2b").code == 1);
}
