// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fraclap/error.hpp"
#include "json.hpp"

namespace fraclap::cli
{

namespace
{

using nlohmann::json;

[[noreturn]] void fail(const std::string &what) { throw ConfigError(what); }

void check_keys(const json &obj, const std::set<std::string> &allowed, const std::string &where)
{
  for (const auto &[key, value] : obj.items())
    if (!allowed.count(key))
      fail("unknown key '" + where + key + "'");
}

double number(const json &v, const std::string &name)
{
  if (!v.is_number())
    fail(name + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    fail(name + " must be finite");
  return d;
}

int integer(const json &v, const std::string &name)
{
  if (!v.is_number_integer())
    fail(name + " must be an integer");
  return v.get<int>();
}

std::string string(const json &v, const std::string &name)
{
  if (!v.is_string())
    fail(name + " must be a string");
  return v.get<std::string>();
}

}  // namespace

RunConfig parse_config_text(const std::string &text)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    // the message carries "at line L, column C"
    std::string msg = e.what();
    if (const auto p = msg.find("parse error"); p != std::string::npos)
      msg = msg.substr(p);
    fail(msg);
  }
  if (!j.is_object())
    fail("config must be a JSON object");
  check_keys(j,
             {"s", "alpha", "bounds", "levels", "nonlinearity", "forcing", "newton_tol",
              "newton_maxit", "ocp_tol", "ocp_maxit", "quadrature", "output"},
             "");

  RunConfig c;
  if (j.contains("s"))
    c.s = number(j["s"], "s");
  if (!(c.s > 0.0 && c.s < 1.0))
    fail("s must lie in (0, 1), got " + j.value("s", json(c.s)).dump());
  if (j.contains("alpha"))
    c.alpha = number(j["alpha"], "alpha");
  if (!(c.alpha > 0.0))
    fail("alpha must be positive");
  if (j.contains("bounds"))
  {
    const json &b = j["bounds"];
    if (!b.is_array() || b.size() != 2)
      fail("bounds must be an array [lo, hi]");
    c.bounds = {number(b[0], "bounds[0]"), number(b[1], "bounds[1]")};
    if (!(c.bounds.lo < c.bounds.hi))
      fail("bounds: need lo < hi");
  }
  if (j.contains("levels"))
  {
    const json &l = j["levels"];
    if (l.is_array())
    {
      if (l.empty())
        fail("levels must not be empty");
      for (const auto &v : l)
        c.levels.push_back(integer(v, "levels"));
    }
    else
      c.levels.push_back(integer(l, "levels"));
    for (int v : c.levels)
      if (v < 0)
        fail("levels must be >= 0");
  }
  if (j.contains("nonlinearity"))
  {
    const std::string n = string(j["nonlinearity"], "nonlinearity");
    if (n == "none")
      c.nonlinearity = NonlinearityKind::None;
    else if (n == "cubic")
      c.nonlinearity = NonlinearityKind::Cubic;
    else
      fail("nonlinearity must be \"none\" or \"cubic\", got \"" + n + "\"");
  }
  if (j.contains("forcing"))
  {
    c.forcing = number(j["forcing"], "forcing");
    c.forcing_set = true;
  }
  if (j.contains("newton_tol"))
    c.newton.tol = number(j["newton_tol"], "newton_tol");
  if (!(c.newton.tol > 0.0))
    fail("newton_tol must be positive");
  if (j.contains("newton_maxit"))
    c.newton.maxit = integer(j["newton_maxit"], "newton_maxit");
  if (c.newton.maxit < 1)
    fail("newton_maxit must be >= 1");
  if (j.contains("ocp_tol"))
    c.ocp_tol = number(j["ocp_tol"], "ocp_tol");
  if (!(c.ocp_tol > 0.0))
    fail("ocp_tol must be positive");
  if (j.contains("ocp_maxit"))
    c.ocp_maxit = integer(j["ocp_maxit"], "ocp_maxit");
  if (c.ocp_maxit < 1)
    fail("ocp_maxit must be >= 1");

  if (j.contains("quadrature"))
  {
    const json &q = j["quadrature"];
    if (!q.is_object())
      fail("quadrature must be an object");
    check_keys(q,
               {"touching_points", "disjoint_points", "far_separation", "near_max_depth",
                "complement_order", "complement_points"},
               "quadrature.");
    if (q.contains("touching_points"))
      c.quad.touching_points = integer(q["touching_points"], "quadrature.touching_points");
    if (q.contains("disjoint_points"))
      c.quad.disjoint_points = integer(q["disjoint_points"], "quadrature.disjoint_points");
    if (q.contains("far_separation"))
      c.quad.far_separation = number(q["far_separation"], "quadrature.far_separation");
    if (q.contains("near_max_depth"))
      c.quad.near_max_depth = integer(q["near_max_depth"], "quadrature.near_max_depth");
    if (q.contains("complement_order"))
      c.quad.complement_order = integer(q["complement_order"], "quadrature.complement_order");
    if (q.contains("complement_points"))
      c.quad.complement_points = integer(q["complement_points"], "quadrature.complement_points");
  }
  try
  {
    c.quad.validate();
  }
  catch (const InvalidArgument &e)
  {
    fail(e.what());
  }

  if (j.contains("output"))
  {
    const json &o = j["output"];
    if (!o.is_object())
      fail("output must be an object");
    check_keys(o, {"state", "control", "adjoint", "study"}, "output.");
    if (o.contains("state"))
      c.output.state = string(o["state"], "output.state");
    if (o.contains("control"))
      c.output.control = string(o["control"], "output.control");
    if (o.contains("adjoint"))
      c.output.adjoint = string(o["adjoint"], "output.adjoint");
    if (o.contains("study"))
      c.output.study = string(o["study"], "output.study");
  }
  return c;
}

RunConfig parse_config(const std::string &path)
{
  std::ifstream is(path);
  if (!is)
    fail("cannot open config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  try
  {
    return parse_config_text(ss.str());
  }
  catch (const ConfigError &e)
  {
    fail(path + ": " + e.what());
  }
}

}  // namespace fraclap::cli
