// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char **argv)
{
  using namespace fraclap::cli;

  CLI::App app{"fraclap: optimal control of semilinear fractional Laplacian problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  int quad_touching = 0;
  int quad_disjoint = 0;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", threads, "assembly worker threads")->capture_default_str();
    sub->add_option("--quad-touching", quad_touching, "Gauss points per direction, touching pairs");
    sub->add_option("--quad-disjoint", quad_disjoint, "Gauss points per direction, disjoint pairs");
  };
  CLI::App *state = app.add_subcommand("state", "solve the state equation");
  CLI::App *ocp = app.add_subcommand("ocp", "solve the optimal control problem");
  CLI::App *study = app.add_subcommand("study", "run the convergence study");
  for (auto *sub : {state, ocp, study})
    add_common(sub);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  RunConfig cfg;
  try
  {
    if (!config_path.empty())
      cfg = parse_config(config_path);
    if (threads < 1)
      throw ConfigError("--threads must be >= 1");
    cfg.quad.threads = threads;
    if (quad_touching > 0)
      cfg.quad.touching_points = quad_touching;
    if (quad_disjoint > 0)
      cfg.quad.disjoint_points = quad_disjoint;
    try
    {
      cfg.quad.validate();
    }
    catch (const std::exception &e)
    {
      throw ConfigError(e.what());
    }
  }
  catch (const ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  }

  const CommandContext ctx{out_dir, &std::cout, &std::cerr};
  if (*state)
    return cmd_state(cfg, ctx);
  if (*ocp)
    return cmd_ocp(cfg, ctx);
  return cmd_study(cfg, ctx);
}
