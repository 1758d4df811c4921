// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_TOOLS_COMMANDS_HPP
#define FRACLAP_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>

#include "run_config.hpp"

namespace fraclap::cli
{

enum ExitCode : int
{
  exit_ok = 0,
  exit_config = 2,
  exit_solver = 3,
  exit_io = 4
};

struct CommandContext
{
  std::string out_dir = ".";
  std::ostream *out = nullptr;  // key=value summaries
  std::ostream *err = nullptr;  // diagnostics
};

// Each command returns an ExitCode and never throws.
int cmd_state(const RunConfig &cfg, const CommandContext &ctx);
int cmd_ocp(const RunConfig &cfg, const CommandContext &ctx);
int cmd_study(const RunConfig &cfg, const CommandContext &ctx);

}  // namespace fraclap::cli

#endif  // FRACLAP_TOOLS_COMMANDS_HPP
