// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "doctest.h"
#include "run_config.hpp"

using namespace fraclap;
using namespace fraclap::cli;
namespace fs = std::filesystem;

namespace
{

struct Run
{
  int code;
  std::string out, err;
};

template <class Cmd>
Run run(Cmd cmd, const RunConfig &cfg, const std::string &dir)
{
  std::ostringstream out, err;
  const CommandContext ctx{dir, &out, &err};
  const int code = cmd(cfg, ctx);
  return {code, out.str(), err.str()};
}

std::string fresh_dir(const std::string &name)
{
  const fs::path p = fs::temp_directory_path() / ("fraclap_cli_" + name);
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const std::string &path)
{
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string parse_error(const std::string &text)
{
  try
  {
    parse_config_text(text);
  }
  catch (const ConfigError &e)
  {
    return e.what();
  }
  return "";
}

// Value of "key=" in a key=value line.
double field(const std::string &line, const std::string &key)
{
  const auto p = line.find(key + "=");
  REQUIRE(p != std::string::npos);
  return std::stod(line.substr(p + key.size() + 1));
}

}  // namespace

TEST_CASE("config defaults")
{
  const RunConfig c = parse_config_text(R"({"s": 0.5})");
  CHECK(c.s == 0.5);
  CHECK(c.alpha == 1.0);
  CHECK(c.bounds.lo == -0.8);
  CHECK(c.bounds.hi == -0.1);
  CHECK(c.nonlinearity == NonlinearityKind::Cubic);
  CHECK(c.levels.empty());
  CHECK(c.output.study == "study.csv");
  const RunConfig d = parse_config_text("{}");
  CHECK(d.s == 0.5);
}

TEST_CASE("config values")
{
  const RunConfig c = parse_config_text(R"({
    "s": 0.3, "alpha": 2, "bounds": [-1, 0.5], "levels": [2, 3, 4], "nonlinearity": "none",
    "newton_tol": 1e-12, "ocp_maxit": 7,
    "quadrature": {"touching_points": 6, "disjoint_points": 4, "far_separation": 4.0},
    "output": {"control": "z.txt"}
  })");
  CHECK(c.s == 0.3);
  CHECK(c.alpha == 2.0);
  CHECK(c.bounds.hi == 0.5);
  CHECK(c.levels == std::vector<int>{2, 3, 4});
  CHECK(c.nonlinearity == NonlinearityKind::None);
  CHECK(c.newton.tol == 1e-12);
  CHECK(c.ocp_maxit == 7);
  CHECK(c.quad.touching_points == 6);
  CHECK(c.quad.disjoint_points == 4);
  CHECK(c.quad.far_separation == 4.0);
  CHECK(c.output.control == "z.txt");
  CHECK(parse_config_text(R"({"levels": 4})").levels == std::vector<int>{4});
}

TEST_CASE("config errors")
{
  CHECK(parse_error(R"({"s": 1.5})").find("s must lie in (0, 1)") != std::string::npos);
  CHECK(parse_error(R"({"bounds": [-0.1, -0.8]})").find("lo < hi") != std::string::npos);
  CHECK(parse_error(R"({"alpha": 0})").find("alpha") != std::string::npos);
  CHECK(parse_error(R"({"levels": -1})").find("levels") != std::string::npos);
  CHECK(parse_error(R"({"levels": 1.5})").find("levels") != std::string::npos);
  CHECK(parse_error(R"({"nonlinearity": "quartic"})").find("nonlinearity") != std::string::npos);
  CHECK(parse_error(R"({"sigma": 0.5})").find("unknown key 'sigma'") != std::string::npos);
  CHECK(parse_error(R"({"quadrature": {"order": 3}})").find("quadrature.order") !=
        std::string::npos);
  CHECK(parse_error(R"({"quadrature": {"disjoint_points": 9}})").find("disjoint_points") !=
        std::string::npos);
  CHECK(parse_error(R"({"s": "half"})").find("s must be a number") != std::string::npos);
  CHECK(parse_error("[1, 2]").find("object") != std::string::npos);
  const std::string e = parse_error("{\n  \"s\": 0.5,\n  \"alpha\": ,\n}");
  CHECK(e.find("line 3") != std::string::npos);
  CHECK_THROWS_AS(parse_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("state command")
{
  RunConfig cfg;
  cfg.levels = {2};
  cfg.nonlinearity = NonlinearityKind::None;
  const std::string dir = fresh_dir("state");
  const Run r = run(cmd_state, cfg, dir);
  REQUIRE(r.code == exit_ok);
  CHECK(r.out.rfind("command=state", 0) == 0);
  CHECK(field(r.out, "ndof") == 37);
  std::ifstream is(dir + "/state.txt");
  double mx = 0.0;
  int lines = 0;
  for (int v; is >> v;)
  {
    double u;
    is >> u;
    mx = std::max(mx, u);
    ++lines;
  }
  CHECK(lines == 61);
  const double u0 = 2.0 / std::numbers::pi;
  CHECK(std::abs(mx - u0) <= 0.05 * u0);
  CHECK(field(r.out, "sup_norm") == doctest::Approx(mx).epsilon(1e-5));

  cfg.nonlinearity = NonlinearityKind::Cubic;
  cfg.forcing = 0.0;
  cfg.bounds = {5.0, 6.0};
  const Run z = run(cmd_state, cfg, dir);
  REQUIRE(z.code == exit_ok);
  CHECK(field(z.out, "sup_norm") == 0.0);
}

TEST_CASE("ocp command")
{
  RunConfig cfg;
  cfg.levels = {3};
  const std::string dir = fresh_dir("ocp");
  const Run r = run(cmd_ocp, cfg, dir);
  REQUIRE(r.code == exit_ok);
  CHECK(field(r.out, "residual") <= 1e-10);
  for (const char *f : {"state.txt", "control.txt", "adjoint.txt"})
    CHECK(fs::exists(fs::path(dir) / f));

  RunConfig pinned;
  pinned.levels = {2};
  pinned.bounds = {-0.1 - 1e-16, -0.1};
  const std::string pdir = fresh_dir("pinned");
  REQUIRE(run(cmd_ocp, pinned, pdir).code == exit_ok);
  std::ifstream is(pdir + "/control.txt");
  int cells = 0;
  for (int t; is >> t;)
  {
    double z;
    is >> z;
    CHECK(std::abs(z + 0.1) <= 1e-15);
    ++cells;
  }
  CHECK(cells == 96);

  RunConfig hard;
  hard.levels = {2};
  hard.ocp_tol = 1e-30;
  const std::string hdir = fresh_dir("hard");
  const Run h = run(cmd_ocp, hard, hdir);
  CHECK(h.code == exit_solver);
  CHECK(h.err.find("maxit exceeded") != std::string::npos);
  CHECK(!fs::exists(hdir));
}

TEST_CASE("study command")
{
  RunConfig cfg;
  cfg.levels = {1};
  const Run bad = run(cmd_study, cfg, fresh_dir("study_bad"));
  CHECK(bad.code == exit_config);
  CHECK(bad.err.find("study needs at least 3 levels") != std::string::npos);

  cfg.levels = {1, 2, 3};
  const std::string a = fresh_dir("study_a"), b = fresh_dir("study_b");
  const Run ra = run(cmd_study, cfg, a);
  const Run rb = run(cmd_study, cfg, b);
  REQUIRE(ra.code == exit_ok);
  REQUIRE(rb.code == exit_ok);
  const std::string csv = slurp(a + "/study.csv");
  CHECK(csv == slurp(b + "/study.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  // last stdout line carries the final orders
  const std::string last = ra.out.substr(ra.out.rfind("eoc_z="));
  CHECK(std::isfinite(field(last, "eoc_z")));
  CHECK(std::isfinite(field(last, "eoc_u_energy")));
}

TEST_CASE("unwritable output directory")
{
  RunConfig cfg;
  cfg.levels = {1};
  const Run r = run(cmd_state, cfg, "/proc/fraclap_no_such_dir");
  CHECK(r.code == exit_io);
}
