// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "fraclap/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <string>

#include "fraclap/error.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap
{

double getoor_constant(double s)
{
  if (!(s > 0.0 && s < 1.0))
    throw InvalidArgument("getoor_constant: s must lie in (0, 1)");
  const double g = std::tgamma(1.0 + s);
  return 1.0 / (std::pow(2.0, 2.0 * s) * g * g);
}

ManufacturedSolution ManufacturedSolution::make(double s, double alpha, ControlBounds b)
{
  b.validate();
  if (!(alpha > 0.0))
    throw InvalidArgument("alpha must be positive");
  return {s, getoor_constant(s), alpha, b};
}

double ManufacturedSolution::energy_squared() const { return c_s * std::numbers::pi / (s + 1.0); }

double exact_state(const ManufacturedSolution &ms, const Point &x)
{
  const double r2 = norm2(x);
  return r2 < 1.0 ? ms.c_s * std::pow(1.0 - r2, ms.s) : 0.0;
}

double exact_adjoint(const ManufacturedSolution &ms, const Point &x) { return exact_state(ms, x); }

double exact_control(const ManufacturedSolution &ms, const Point &x)
{
  return project_box(ms.bounds, -exact_adjoint(ms, x) / ms.alpha);
}

double manufactured_forcing(const ManufacturedSolution &ms, const Point &x)
{
  const double u = exact_state(ms, x);
  return 1.0 + u * u * u - exact_control(ms, x);
}

double desired_state(const ManufacturedSolution &ms, const Point &x)
{
  const double u = exact_state(ms, x);
  return u - 3.0 * u * u * exact_adjoint(ms, x) - 1.0;
}

OCProblem manufactured_problem(const ManufacturedSolution &ms)
{
  OCProblem p;
  p.a = Nonlinearity::cubic();
  p.L = CostIntegrand::tracking([ms](const Point &x) { return desired_state(ms, x); });
  p.alpha = ms.alpha;
  p.bounds = ms.bounds;
  p.forcing = [ms](const Point &x) { return manufactured_forcing(ms, x); };
  return p;
}

double error_control_l2(const TriangleMesh &m, const ControlField &z,
                        const ManufacturedSolution &ms)
{
  if (z.values.size() != m.num_triangles())
    throw InvalidArgument("error_control_l2: control does not match the mesh");
  const TriangleRule &rule = reference_quadrature(6);
  double e = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto c = m.corners(t);
    for (const auto &q : rule)
    {
      const double d = exact_control(ms, from_barycentric(c, q.bary)) - z.values[t];
      e += q.weight * m.area(t) * d * d;
    }
  }
  return std::sqrt(e);
}

double error_l2_manufactured(const TriangleMesh &m, const NodalField &u,
                             const ManufacturedSolution &ms)
{
  if (u.coefficients.size() != m.num_interior())
    throw InvalidArgument("error_l2_manufactured: field does not match the mesh");
  const TriangleRule &rule = reference_quadrature(6);
  double e = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto c = m.corners(t);
    for (const auto &q : rule)
    {
      const double d = exact_state(ms, from_barycentric(c, q.bary)) -
                       evaluate_p1(m, u.coefficients, t, q.bary);
      e += q.weight * m.area(t) * d * d;
    }
  }
  return std::sqrt(e);
}

double error_energy_manufactured(const NonlocalOperator &op, const NodalField &u,
                                 const ManufacturedSolution &ms)
{
  const Vector &v = u.coefficients;
  if (v.size() != op.num_dofs())
    throw InvalidArgument("error_energy_manufactured: field does not match the operator");
  const double e2 = ms.energy_squared();
  const double r = e2 - 2.0 * op.ones_load().dot(v) + v.dot(op.stiffness() * v);
  if (r < 0.0)
  {
    if (r < -1e-12 * std::max(1.0, e2))
      throw NumericalError("error_energy_manufactured: negative squared error " +
                           std::to_string(r));
    return 0.0;
  }
  return std::sqrt(r);
}

double sliver_l2(const TriangleMesh &m, const ManufacturedSolution &ms)
{
  if (m.shape() != BoundaryShape::UnitCircle)
    return 0.0;
  const GaussRule g = gauss_legendre(16);
  const double p = 2.0 * ms.s + 1.0;
  double e = 0.0;
  for (const auto &[ia, ib] : m.boundary_edges())
  {
    const Point a = m.vertex(ia), b = m.vertex(ib);
    const double ta = std::atan2(a.y, a.x);
    double tb = std::atan2(b.y, b.x);
    while (tb < ta)
      tb += 2.0 * std::numbers::pi;
    // chord line n . x = d0
    const Point w = b - a;
    const Point n{w.y / norm(w), -w.x / norm(w)};
    const double d0 = dot(n, a);
    for (std::size_t q = 0; q < g.size(); ++q)
    {
      const double th = ta + (tb - ta) * g.nodes[q];
      const double rho = d0 / (n.x * std::cos(th) + n.y * std::sin(th));
      // int_rho^1 c^2 (1 - r^2)^{2s} r dr
      e += g.weights[q] * (tb - ta) * ms.c_s * ms.c_s * std::pow(1.0 - rho * rho, p) / (2.0 * p);
    }
  }
  return std::sqrt(e);
}

std::vector<double> eoc(const std::vector<double> &errs, const std::vector<double> &hs)
{
  if (errs.size() != hs.size() || errs.size() < 2)
    throw InvalidArgument("eoc: need two or more errors and matching sizes");
  std::vector<double> r;
  for (std::size_t i = 0; i < errs.size(); ++i)
    if (!(errs[i] > 0.0) || !(hs[i] > 0.0))
      throw InvalidArgument("eoc: errors and sizes must be positive");
  for (std::size_t i = 0; i + 1 < errs.size(); ++i)
    r.push_back(std::log(errs[i] / errs[i + 1]) / std::log(hs[i] / hs[i + 1]));
  return r;
}

namespace
{

// Coarse triangle containing x together with its barycentric coordinates; -1 if none.
int locate(const TriangleMesh &m, const Point &x, Barycentric &l)
{
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto c = m.corners(t);
    const double a = signed_area(c[0], c[1], c[2]);
    l = {signed_area(x, c[1], c[2]) / a, signed_area(c[0], x, c[2]) / a,
         signed_area(c[0], c[1], x) / a};
    if (l[0] >= -1e-12 && l[1] >= -1e-12 && l[2] >= -1e-12)
      return t;
  }
  return -1;
}

}  // namespace

Vector interpolate_nodal(const TriangleMesh &coarse, const TriangleMesh &fine, const Vector &u)
{
  if (u.size() != coarse.num_interior())
    throw InvalidArgument("interpolate_nodal: field does not match the coarse mesh");
  Vector r = Vector::Zero(fine.num_interior());
  for (int k = 0; k < fine.num_interior(); ++k)
  {
    Barycentric l;
    // outside the coarse Omega_h the zero extension applies
    const int t = locate(coarse, fine.vertex(fine.interior_vertices()[k]), l);
    r[k] = t < 0 ? 0.0 : evaluate_p1(coarse, u, t, l);
  }
  return r;
}

Vector interpolate_cells(const TriangleMesh &coarse, const TriangleMesh &fine, const Vector &z)
{
  if (z.size() != coarse.num_triangles())
    throw InvalidArgument("interpolate_cells: control does not match the coarse mesh");
  Vector r(fine.num_triangles());
  for (int t = 0; t < fine.num_triangles(); ++t)
  {
    const auto c = fine.corners(t);
    Barycentric l;
    const Point x = (1.0 / 3.0) * (c[0] + c[1] + c[2]);
    int tc = locate(coarse, x, l);
    if (tc < 0)
    {
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < coarse.num_triangles(); ++k)
      {
        const auto cc = coarse.corners(k);
        const double d = norm2((1.0 / 3.0) * (cc[0] + cc[1] + cc[2]) - x);
        if (d < best)
        {
          best = d;
          tc = k;
        }
      }
    }
    r[t] = z[tc];
  }
  return r;
}

double ConvergenceReport::ndof_slope(double LevelResult::*column) const
{
  if (rows.size() < 2)
    throw InvalidArgument("ndof_slope: need two levels");
  const auto &a = rows[rows.size() - 2];
  const auto &b = rows.back();
  return std::log(b.*column / a.*column) / std::log(static_cast<double>(b.ndof) / a.ndof);
}

ConvergenceReport run_convergence_study(const StudyConfig &cfg)
{
  if (cfg.levels.size() < 3)
    throw InvalidArgument("study needs at least 3 levels");
  for (std::size_t i = 0; i < cfg.levels.size(); ++i)
    if (cfg.levels[i] < 0 || (i > 0 && cfg.levels[i] <= cfg.levels[i - 1]))
      throw InvalidArgument("study levels must be nonnegative and increasing");
  const auto ms = ManufacturedSolution::make(cfg.s, cfg.alpha, cfg.bounds);
  const OCProblem prob = manufactured_problem(ms);
  const KernelParams kernel = KernelParams::make(cfg.s);

  ConvergenceReport rep;
  rep.s = cfg.s;
  rep.expected_control = std::min(1.0, cfg.s + 0.5);
  std::shared_ptr<const TriangleMesh> prev_mesh;
  OCPSolution prev;
  for (int level : cfg.levels)
  {
    const auto t0 = std::chrono::steady_clock::now();
    auto mesh = std::make_shared<const TriangleMesh>(generate_disk_mesh(level));
    const NonlocalOperator op(mesh, kernel, cfg.quad);
    ControlField z0 = ControlField::constant(*mesh, 0.5 * (ms.bounds.lo + ms.bounds.hi));
    StateField guess;
    const bool chain = cfg.chain_guesses && prev_mesh;
    if (chain)
    {
      z0.values = interpolate_cells(*prev_mesh, *mesh, prev.z.values);
      guess.mesh = mesh;
      guess.coefficients = interpolate_nodal(*prev_mesh, *mesh, prev.u.coefficients);
    }
    OCPSolution sol = solve_ocp(prob, op, z0, cfg.ocp, chain ? &guess : nullptr);

    LevelResult r;
    r.level = level;
    r.h = mesh->h();
    r.ndof = mesh->num_interior();
    r.err_z_l2 = error_control_l2(*mesh, sol.z, ms);
    r.err_u_energy = error_energy_manufactured(op, sol.u, ms);
    r.err_p_energy = error_energy_manufactured(op, sol.p, ms);
    r.err_u_l2 = error_l2_manufactured(*mesh, sol.u, ms);
    r.sup_u = sol.u.sup_norm();
    r.sliver_u_l2 = sliver_l2(*mesh, ms);
    r.outer_iterations = sol.iterations;
    r.newton_iterations = sol.newton_iterations;
    r.residual = sol.residual;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.rows.push_back(r);
    if (cfg.log)
    {
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "s=%g level=%d ndof=%d outer=%d err_z=%.4e err_u=%.4e time=%.1fs", cfg.s,
                    level, r.ndof, r.outer_iterations, r.err_z_l2, r.err_u_energy, r.seconds);
      cfg.log(buf);
    }
    prev_mesh = mesh;
    prev = std::move(sol);
  }

  std::vector<double> hs, ez, eu, ep, el;
  for (const auto &r : rep.rows)
  {
    hs.push_back(r.h);
    ez.push_back(r.err_z_l2);
    eu.push_back(r.err_u_energy);
    ep.push_back(r.err_p_energy);
    el.push_back(r.err_u_l2);
  }
  rep.eoc_z = eoc(ez, hs);
  rep.eoc_u_energy = eoc(eu, hs);
  rep.eoc_p_energy = eoc(ep, hs);
  rep.eoc_u_l2 = eoc(el, hs);
  return rep;
}

void write_csv(std::ostream &os, const ConvergenceReport &r)
{
  os << study_csv_header << '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  for (std::size_t i = 0; i < r.rows.size(); ++i)
  {
    const auto &row = r.rows[i];
    os << row.level << ',' << num(row.h) << ',' << row.ndof << ',' << num(row.err_z_l2) << ','
       << num(row.err_u_energy) << ',' << num(row.err_p_energy) << ',' << num(row.err_u_l2);
    if (i == 0)
      os << ",,,,";
    else
      os << ',' << num(r.eoc_z[i - 1]) << ',' << num(r.eoc_u_energy[i - 1]) << ','
         << num(r.eoc_p_energy[i - 1]) << ',' << num(r.eoc_u_l2[i - 1]);
    os << '\n';
  }
}

GetoorReport run_getoor_study(double s, const std::vector<int> &levels,
                              const QuadratureConfig &quad)
{
  if (levels.size() < 2)
    throw InvalidArgument("run_getoor_study: need at least 2 levels");
  const auto ms = ManufacturedSolution::make(s);
  const KernelParams kernel = KernelParams::make(s);
  GetoorReport rep;
  rep.s = s;
  rep.exact_energy = ms.energy_squared();
  std::vector<double> hs, ee, el;
  for (int level : levels)
  {
    auto mesh = std::make_shared<const TriangleMesh>(generate_disk_mesh(level));
    const NonlocalOperator op(mesh, kernel, quad);
    const Eigen::LLT<DenseMatrix> llt(op.stiffness());
    if (llt.info() != Eigen::Success)
      throw NumericalError("run_getoor_study: stiffness is not positive definite");
    NodalField u;
    u.mesh = mesh;
    u.coefficients = llt.solve(op.ones_load());
    GetoorLevel r;
    r.level = level;
    r.h = mesh->h();
    r.ndof = mesh->num_interior();
    r.energy = u.coefficients.dot(op.stiffness() * u.coefficients);
    r.err_energy = error_energy_manufactured(op, u, ms);
    r.err_l2 = error_l2_manufactured(*mesh, u, ms);
    r.sup_u = u.sup_norm();
    rep.rows.push_back(r);
    hs.push_back(r.h);
    ee.push_back(r.err_energy);
    el.push_back(r.err_l2);
  }
  rep.eoc_energy = eoc(ee, hs);
  rep.eoc_l2 = eoc(el, hs);
  return rep;
}

}  // namespace fraclap
