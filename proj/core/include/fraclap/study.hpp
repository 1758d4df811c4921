// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_STUDY_HPP
#define FRACLAP_STUDY_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fraclap/control.hpp"

namespace fraclap
{

// c_s = Gamma(n/2) / (2^{2s} Gamma((n+2s)/2) Gamma(1+s)) at n = 2.
double getoor_constant(double s);

// Optimal triple u = p = c_s (1 - |x|^2)_+^s, z = project_box(-p / alpha) of the cubic
// tracking problem with forcing f = 1 + u^3 - z and desired state u_d = u - 3 u^2 p - 1.
struct ManufacturedSolution
{
  double s = 0.5;
  double c_s = 0.0;
  double alpha = 1.0;
  ControlBounds bounds;

  static ManufacturedSolution make(double s, double alpha = 1.0, ControlBounds b = {});
  // ||u||_s^2 = int u = c_s pi / (s + 1)
  double energy_squared() const;
};

double exact_state(const ManufacturedSolution &ms, const Point &x);
double exact_adjoint(const ManufacturedSolution &ms, const Point &x);
double exact_control(const ManufacturedSolution &ms, const Point &x);
double manufactured_forcing(const ManufacturedSolution &ms, const Point &x);
double desired_state(const ManufacturedSolution &ms, const Point &x);

// Cubic nonlinearity, tracking cost toward desired_state, forcing manufactured_forcing.
OCProblem manufactured_problem(const ManufacturedSolution &ms);

// Errors over Omega_h with the order-6 rule.
double error_control_l2(const TriangleMesh &m, const ControlField &z,
                        const ManufacturedSolution &ms);
double error_l2_manufactured(const TriangleMesh &m, const NodalField &u,
                             const ManufacturedSolution &ms);
// sqrt(||u||_s^2 - 2 <ones_load, u_h> + u_h^T K u_h); exact because (-Delta)^s u = 1.
double error_energy_manufactured(const NonlocalOperator &op, const NodalField &u,
                                 const ManufacturedSolution &ms);
// ||u||_{L2(Omega \ Omega_h)} of the exact state (disk meshes only).
double sliver_l2(const TriangleMesh &m, const ManufacturedSolution &ms);

// log(e_i / e_{i+1}) / log(h_i / h_{i+1}); throws on nonpositive entries.
std::vector<double> eoc(const std::vector<double> &errs, const std::vector<double> &hs);

// P1 interpolation of a coarse field onto the vertices of a finer mesh (zero outside the
// coarse Omega_h), and cellwise transfer of a piecewise constant through the fine centroids.
Vector interpolate_nodal(const TriangleMesh &coarse, const TriangleMesh &fine, const Vector &u);
Vector interpolate_cells(const TriangleMesh &coarse, const TriangleMesh &fine, const Vector &z);

struct StudyConfig
{
  double s = 0.5;
  double alpha = 1.0;
  ControlBounds bounds;
  std::vector<int> levels{2, 3, 4, 5};
  QuadratureConfig quad;
  OCPOptions ocp;
  // Seed each level with the interpolated coarse solution.
  bool chain_guesses = true;
  // Progress messages; may be empty.
  std::function<void(const std::string &)> log;
};

struct LevelResult
{
  int level = 0;
  double h = 0.0;
  int ndof = 0;
  double err_z_l2 = 0.0;
  double err_u_energy = 0.0;
  double err_p_energy = 0.0;
  double err_u_l2 = 0.0;
  double sup_u = 0.0;
  double sliver_u_l2 = 0.0;
  int outer_iterations = 0;
  int newton_iterations = 0;
  double residual = 0.0;
  double seconds = 0.0;
};

struct ConvergenceReport
{
  double s = 0.5;
  std::vector<LevelResult> rows;
  // Orders with respect to h, one per consecutive pair of levels.
  std::vector<double> eoc_z, eoc_u_energy, eoc_p_energy, eoc_u_l2;
  // Targets: gamma = min(1, s + 1/2) for the control, 1/2 for the energy errors.
  double expected_control = 0.0;
  double expected_energy = 0.5;

  // Slope of an error column against Ndof over the last pair of levels.
  double ndof_slope(double LevelResult::*column) const;
};

// Throws InvalidArgument with fewer than three levels.
ConvergenceReport run_convergence_study(const StudyConfig &cfg);

// Header plus one row per level; 6 significant digits; EOC cells empty on the first row.
void write_csv(std::ostream &os, const ConvergenceReport &r);
inline constexpr const char *study_csv_header =
    "level,h,ndof,err_z_l2,err_u_energy,err_p_energy,err_u_l2,eoc_z,eoc_u_energy,eoc_p_energy,"
    "eoc_u_l2";

// Linear problem A(u, v) = (1, v): the discrete Getoor solution per level.
struct GetoorLevel
{
  int level = 0;
  double h = 0.0;
  int ndof = 0;
  double energy = 0.0;  // u_h^T K u_h
  double err_energy = 0.0;
  double err_l2 = 0.0;
  double sup_u = 0.0;
};

struct GetoorReport
{
  double s = 0.5;
  double exact_energy = 0.0;
  std::vector<GetoorLevel> rows;
  std::vector<double> eoc_energy, eoc_l2;
};

GetoorReport run_getoor_study(double s, const std::vector<int> &levels,
                              const QuadratureConfig &quad = {});

}  // namespace fraclap

#endif  // FRACLAP_STUDY_HPP
