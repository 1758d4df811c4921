// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "fraclap/control.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>

#include "fraclap/error.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap
{

void ControlBounds::validate() const
{
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw InvalidArgument("bounds: lo and hi must be finite");
  if (!(lo < hi))
    throw InvalidArgument("bounds: need lo < hi");
}

double project_box(const ControlBounds &b, double v) { return std::min(b.hi, std::max(v, b.lo)); }

bool ControlField::admissible(const ControlBounds &b) const
{
  return std::all_of(values.begin(), values.end(),
                     [&](double v) { return v >= b.lo && v <= b.hi; });
}

double ControlField::squared_l2(const TriangleMesh &m) const
{
  double s = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t)
    s += m.area(t) * values[t] * values[t];
  return s;
}

ControlField ControlField::constant(const TriangleMesh &m, double v)
{
  return {Vector::Constant(m.num_triangles(), v)};
}

void OCProblem::validate() const
{
  bounds.validate();
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("alpha must be positive");
  if (!a.a || !a.da || !a.d2a)
    throw InvalidArgument("nonlinearity is incomplete");
  if (!L.L || !L.dL || !L.d2L)
    throw InvalidArgument("cost integrand is incomplete");
}

ControlField cell_average(const TriangleMesh &m, const AdjointField &p)
{
  if (p.coefficients.size() != m.num_interior())
    throw InvalidArgument("cell_average: field does not match the mesh");
  ControlField q{Vector::Zero(m.num_triangles())};
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    double s = 0.0;
    for (int v : m.triangle(t))
    {
      const int i = m.interior_index(v);
      if (i >= 0)
        s += p.coefficients[i];
    }
    q.values[t] = s / 3.0;
  }
  return q;
}

namespace
{

void check_control(const TriangleMesh &m, const ControlField &z, const char *what)
{
  if (z.values.size() != m.num_triangles())
    throw InvalidArgument(std::string(what) + ": control must have one value per triangle");
}

Vector forcing_load(const OCProblem &prob, const TriangleMesh &m)
{
  if (!prob.forcing)
    return Vector::Zero(m.num_interior());
  return load_vector(m, prob.forcing, nonlinear_quadrature_order);
}

struct Evaluation
{
  StateField u;
  std::optional<TangentOperator> tangent;
  AdjointField p;
};

Evaluation evaluate(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z,
                    const NewtonOptions &newton, bool adjoint)
{
  check_control(op.mesh(), z, "evaluate");
  Evaluation e;
  e.u = solve_state(op, prob.a, state_rhs(prob, op, z), nullptr, newton);
  if (adjoint)
  {
    e.tangent.emplace(op, prob.a, e.u.coefficients);
    e.p = solve_adjoint(op, *e.tangent, prob.L, e.u);
  }
  return e;
}

enum : std::uint8_t
{
  inactive = 0,
  active_lo = 1,
  active_hi = 2
};

std::uint64_t pattern_hash(const std::vector<std::uint8_t> &pat)
{
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (auto c : pat)
  {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Vector state_rhs(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z)
{
  check_control(op.mesh(), z, "state_rhs");
  return forcing_load(prob, op.mesh()) + op.control_mass() * z.values;
}

double reduced_cost(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z,
                    const NewtonOptions &newton)
{
  prob.validate();
  const Evaluation e = evaluate(prob, op, z, newton, false);
  return integrate_cost(op.mesh(), prob.L, e.u.coefficients) +
         0.5 * prob.alpha * z.squared_l2(op.mesh());
}

ControlField reduced_gradient(const OCProblem &prob, const NonlocalOperator &op,
                              const ControlField &z, const NewtonOptions &newton)
{
  prob.validate();
  const Evaluation e = evaluate(prob, op, z, newton, true);
  ControlField g = cell_average(op.mesh(), e.p);
  g.values += prob.alpha * z.values;
  return g;
}

double second_variation(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z,
                        const ControlField &w, const NewtonOptions &newton)
{
  prob.validate();
  const TriangleMesh &m = op.mesh();
  check_control(m, w, "second_variation");
  const Evaluation e = evaluate(prob, op, z, newton, true);
  const StateField phi = solve_linearized(op, *e.tangent, w.values);
  double v = 0.0;
  const TriangleRule &rule = reference_quadrature(nonlinear_quadrature_order);
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto c = m.corners(t);
    for (const auto &q : rule)
    {
      const Point x = from_barycentric(c, q.bary);
      const double u = e.u.eval(t, q.bary);
      const double p = e.p.eval(t, q.bary);
      const double f = phi.eval(t, q.bary);
      v += q.weight * m.area(t) * (prob.L.d2L(x, u) - p * prob.a.d2a(x, u)) * f * f;
    }
  }
  return v + prob.alpha * w.squared_l2(m);
}

OCPSolution solve_ocp(const OCProblem &prob, const NonlocalOperator &op, const ControlField &z0,
                      const OCPOptions &opt, const StateField *u_guess)
{
  prob.validate();
  const TriangleMesh &m = op.mesh();
  check_control(m, z0, "solve_ocp");
  if (!(opt.tol > 0.0) || opt.maxit < 1)
    throw InvalidArgument("solve_ocp: tol must be positive and maxit >= 1");
  if (!z0.admissible(prob.bounds))
    throw InvalidArgument("solve_ocp: initial control is not admissible");

  const int nt = m.num_triangles();
  const Vector fload = forcing_load(prob, m);
  ControlField z = z0;
  std::optional<StateField> guess;
  if (u_guess)
  {
    if (u_guess->coefficients.size() != m.num_interior())
      throw InvalidArgument("solve_ocp: state guess does not match the mesh");
    guess = *u_guess;
  }
  std::optional<TangentOperator> tangent;
  std::vector<std::uint8_t> pattern(nt), previous;
  std::unordered_set<std::uint64_t> seen;
  OCPSolution sol;

  for (int it = 1; it <= opt.maxit; ++it)
  {
    const Vector rhs = fload + op.control_mass() * z.values;
    StateField u = solve_state(op, prob.a, rhs, guess ? &*guess : nullptr, opt.newton,
                               tangent ? &*tangent : nullptr);
    sol.newton_iterations += u.newton_iterations;
    tangent.emplace(op, prob.a, u.coefficients);
    AdjointField p = solve_adjoint(op, *tangent, prob.L, u);
    const ControlField q = cell_average(m, p);

    ControlField znew{Vector(nt)};
    double diff = 0.0;
    for (int t = 0; t < nt; ++t)
    {
      const double v = -q.values[t] / prob.alpha;
      pattern[t] = v < prob.bounds.lo ? active_lo : (v > prob.bounds.hi ? active_hi : inactive);
      znew.values[t] = project_box(prob.bounds, v);
      diff = std::max(diff, std::abs(znew.values[t] - z.values[t]));
    }

    const double cost = integrate_cost(m, prob.L, u.coefficients) +
                        0.5 * prob.alpha * z.squared_l2(m);
    if (!sol.cost_history.empty() && cost > sol.cost_history.back() + 10.0 * opt.tol)
      ++sol.cost_increases;
    sol.cost_history.push_back(cost);

    if (pattern == previous && diff <= opt.tol && u.residual <= opt.tol)
    {
      sol.u = std::move(u);
      sol.p = std::move(p);
      sol.z = std::move(z);
      sol.iterations = it;
      sol.residual = diff;
      return sol;
    }

    const std::uint64_t h = pattern_hash(pattern);
    const bool revisit = pattern != previous && seen.count(h) > 0;
    seen.insert(h);
    if (revisit)
      z.values += 0.5 * (znew.values - z.values);
    else
      z = std::move(znew);
    previous = pattern;
    guess = std::move(u);
  }
  throw ConvergenceError("solve_ocp: maxit exceeded (" + std::to_string(opt.maxit) +
                         " outer iterations)");
}

}  // namespace fraclap
