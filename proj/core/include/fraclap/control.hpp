// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_CONTROL_HPP
#define FRACLAP_CONTROL_HPP

#include <vector>

#include "fraclap/assembly.hpp"
#include "fraclap/pde.hpp"

namespace fraclap
{

struct ControlBounds
{
  double lo = -0.8;
  double hi = -0.1;

  // Throws InvalidArgument unless lo < hi (both finite).
  void validate() const;
};

// min(hi, max(v, lo))
double project_box(const ControlBounds &b, double v);

// One constant per triangle.
struct ControlField
{
  Vector values;

  bool admissible(const ControlBounds &b) const;
  // int z^2 over Omega_h.
  double squared_l2(const TriangleMesh &m) const;
  static ControlField constant(const TriangleMesh &m, double v);
};

struct OCProblem
{
  Nonlinearity a;
  CostIntegrand L;
  double alpha = 1.0;
  ControlBounds bounds;
  // Extra forcing f in  A(u, v) + (a(u), v) = (f + z, v).
  PointFunction forcing;

  void validate() const;
};

struct OCPOptions
{
  double tol = 1e-10;
  int maxit = 100;
  NewtonOptions newton;
};

struct OCPSolution
{
  StateField u;
  AdjointField p;
  ControlField z;
  int iterations = 0;
  // max_T |z_T - project_box(-(cell_average p)_T / alpha)|
  double residual = 0.0;
  // Reduced cost at every outer iterate, and how often it went up by more than 10 tol.
  std::vector<double> cost_history;
  int cost_increases = 0;
  int newton_iterations = 0;
};

// (1/|T|) int_T p, i.e. the mean of the vertex values.
ControlField cell_average(const TriangleMesh &m, const AdjointField &p);

// rhs = int (f + z) phi_i
Vector state_rhs(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z);

// int L(x, u_h) + alpha/2 ||z||^2 with u_h = S(z).
double reduced_cost(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z,
                    const NewtonOptions &newton = {});

// cell_average(p) + alpha z; pairs with directions through the L2 product sum_T |T| g_T w_T.
ControlField reduced_gradient(const OCProblem &prob, const NonlocalOperator &op,
                              const ControlField &z, const NewtonOptions &newton = {});

// j''(z)[w, w] = int (d2L(u) - p d2a(u)) phi_w^2 + alpha ||w||^2.
double second_variation(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z,
                        const ControlField &w, const NewtonOptions &newton = {});

// Projected fixed-point iteration z <- project_box(-cell_average(p(z)) / alpha) with
// active-set stopping. `u_guess` seeds the first Newton solve. Throws ConvergenceError when
// maxit is exceeded.
OCPSolution solve_ocp(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z0,
                      const OCPOptions &opt = {}, const StateField *u_guess = nullptr);

}  // namespace fraclap

#endif  // FRACLAP_CONTROL_HPP
