// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_TOOLS_RUN_CONFIG_HPP
#define FRACLAP_TOOLS_RUN_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "fraclap/assembly.hpp"
#include "fraclap/control.hpp"

namespace fraclap::cli
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class NonlinearityKind
{
  None,
  Cubic
};

struct OutputPaths
{
  std::string state = "state.txt";
  std::string control = "control.txt";
  std::string adjoint = "adjoint.txt";
  std::string study = "study.csv";
};

struct RunConfig
{
  double s = 0.5;
  double alpha = 1.0;
  ControlBounds bounds;
  // empty means "use the command default"
  std::vector<int> levels;
  NonlinearityKind nonlinearity = NonlinearityKind::Cubic;
  double forcing = 1.0;
  bool forcing_set = false;
  NewtonOptions newton;
  double ocp_tol = 1e-10;
  int ocp_maxit = 100;
  QuadratureConfig quad;
  OutputPaths output;
};

// Throws ConfigError; parse errors carry line and column.
RunConfig parse_config_text(const std::string &text);
RunConfig parse_config(const std::string &path);

}  // namespace fraclap::cli

#endif  // FRACLAP_TOOLS_RUN_CONFIG_HPP
