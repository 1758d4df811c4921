// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "fraclap/pde.hpp"

#include <cmath>
#include <string>

#include "fraclap/error.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap
{

Nonlinearity Nonlinearity::none()
{
  Nonlinearity n;
  n.a = [](const Point &, double) { return 0.0; };
  n.da = n.a;
  n.d2a = n.a;
  n.vanishes = true;
  return n;
}

Nonlinearity Nonlinearity::cubic()
{
  Nonlinearity n;
  n.a = [](const Point &, double u) { return u * u * u; };
  n.da = [](const Point &, double u) { return 3.0 * u * u; };
  n.d2a = [](const Point &, double u) { return 6.0 * u; };
  return n;
}

CostIntegrand CostIntegrand::tracking(PointFunction u_d)
{
  CostIntegrand c;
  c.L = [u_d](const Point &x, double u) {
    const double d = u - u_d(x);
    return 0.5 * d * d;
  };
  c.dL = [u_d](const Point &x, double u) { return u - u_d(x); };
  c.d2L = [](const Point &, double) { return 1.0; };
  return c;
}

double NodalField::sup_norm() const
{
  return coefficients.size() == 0 ? 0.0 : coefficients.cwiseAbs().maxCoeff();
}

double NodalField::eval(int t, const Barycentric &l) const
{
  return evaluate_p1(*mesh, coefficients, t, l);
}

double evaluate_p1(const TriangleMesh &m, const Vector &u, int t, const Barycentric &l)
{
  const auto &tri = m.triangle(t);
  double v = 0.0;
  for (int k = 0; k < 3; ++k)
  {
    const int i = m.interior_index(tri[k]);
    if (i >= 0)
      v += l[k] * u[i];
  }
  return v;
}

namespace
{

void check_size(const TriangleMesh &m, const Vector &u, const char *what)
{
  if (u.size() != m.num_interior())
    throw InvalidArgument(std::string(what) + ": vector length " + std::to_string(u.size()) +
                          " does not match " + std::to_string(m.num_interior()) + " DOFs");
}

// Calls f(t, l, x, weight) for every point of the nonlinear rule.
template <class F>
void for_each_point(const TriangleMesh &m, F &&f)
{
  const TriangleRule &rule = reference_quadrature(nonlinear_quadrature_order);
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto c = m.corners(t);
    for (const auto &q : rule)
      f(t, q.bary, from_barycentric(c, q.bary), q.weight * m.area(t));
  }
}

template <class G>
Vector scalar_load(const TriangleMesh &m, G &&g)
{
  Vector b = Vector::Zero(m.num_interior());
  for_each_point(m, [&](int t, const Barycentric &l, const Point &x, double w) {
    const double v = w * g(t, l, x);
    const auto &tri = m.triangle(t);
    for (int k = 0; k < 3; ++k)
    {
      const int i = m.interior_index(tri[k]);
      if (i >= 0)
        b[i] += v * l[k];
    }
  });
  return b;
}

}  // namespace

Vector field_load(const TriangleMesh &m, const ScalarField &g, const Vector &u)
{
  check_size(m, u, "field_load");
  return scalar_load(m, [&](int t, const Barycentric &l, const Point &x) {
    return g(x, evaluate_p1(m, u, t, l));
  });
}

Vector nonlinear_term(const TriangleMesh &m, const Nonlinearity &a, const Vector &u)
{
  if (a.vanishes)
    return Vector::Zero(m.num_interior());
  return field_load(m, a.a, u);
}

SparseMatrix tangent_mass(const TriangleMesh &m, const Nonlinearity &a, const Vector &u)
{
  check_size(m, u, "tangent_mass");
  if (a.vanishes)
    return SparseMatrix(m.num_interior(), m.num_interior());
  const SparseMatrix full = assemble_weighted_mass(
      m,
      [&](int t, const Barycentric &l, const Point &x) {
        const double d = a.da(x, evaluate_p1(m, u, t, l));
        if (d < 0.0)
          throw NumericalError("nonlinearity has negative derivative da/du = " +
                               std::to_string(d));
        return d;
      },
      nonlinear_quadrature_order);
  return restrict_to_interior(m, full);
}

Vector state_residual(const NonlocalOperator &op, const Nonlinearity &a, const Vector &rhs,
                      const Vector &u)
{
  return op.stiffness() * u + nonlinear_term(op.mesh(), a, u) - rhs;
}

TangentOperator::TangentOperator(const NonlocalOperator &op, const Nonlinearity &a,
                                 const Vector &u)
    : state_(u)
{
  check_size(op.mesh(), u, "TangentOperator");
  DenseMatrix j = op.stiffness();
  if (!a.vanishes)
    j += DenseMatrix(tangent_mass(op.mesh(), a, u));
  llt_.compute(j);
  if (llt_.info() != Eigen::Success)
    throw NumericalError("Cholesky factorization of K + W(u) failed");
}

Vector TangentOperator::solve(const Vector &b) const { return llt_.solve(b); }

StateField solve_state(const NonlocalOperator &op, const Nonlinearity &a, const Vector &rhs,
                       const StateField *guess, const NewtonOptions &opt,
                       const TangentOperator *tangent)
{
  const TriangleMesh &m = op.mesh();
  check_size(m, rhs, "solve_state");
  if (!(opt.tol > 0.0) || opt.maxit < 1 || opt.max_halvings < 0)
    throw InvalidArgument("solve_state: invalid Newton options");

  StateField u;
  u.mesh = op.mesh_ptr();
  u.coefficients = guess ? guess->coefficients : Vector::Zero(m.num_interior());
  check_size(m, u.coefficients, "solve_state guess");

  Vector r = state_residual(op, a, rhs, u.coefficients);
  double rn = r.lpNorm<Eigen::Infinity>();
  for (int it = 1; rn > opt.tol; ++it)
  {
    if (it > opt.maxit)
      throw ConvergenceError("Newton: no convergence in " + std::to_string(opt.maxit) +
                             " iterations (residual " + std::to_string(rn) + ")");
    Vector step;
    if (it == 1 && tangent && tangent->state().size() == u.coefficients.size() &&
        tangent->state() == u.coefficients)
      step = -tangent->solve(r);
    else
      step = -TangentOperator(op, a, u.coefficients).solve(r);

    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opt.max_halvings; ++k, t *= 0.5)
    {
      const Vector trial = u.coefficients + t * step;
      Vector rt = state_residual(op, a, rhs, trial);
      const double rtn = rt.lpNorm<Eigen::Infinity>();
      if (rtn < rn)
      {
        u.coefficients = trial;
        r = std::move(rt);
        rn = rtn;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw ConvergenceError("Newton: line search failed at residual " + std::to_string(rn));
    u.newton_iterations = it;
  }
  u.residual = rn;
  return u;
}

AdjointField solve_adjoint(const NonlocalOperator &op, const TangentOperator &t,
                           const CostIntegrand &L, const StateField &u)
{
  AdjointField p;
  p.mesh = op.mesh_ptr();
  p.coefficients = t.solve(field_load(op.mesh(), L.dL, u.coefficients));
  return p;
}

AdjointField solve_adjoint(const NonlocalOperator &op, const Nonlinearity &a,
                           const CostIntegrand &L, const StateField &u)
{
  return solve_adjoint(op, TangentOperator(op, a, u.coefficients), L, u);
}

StateField solve_linearized(const NonlocalOperator &op, const TangentOperator &t,
                            const Vector &w)
{
  if (w.size() != op.mesh().num_triangles())
    throw InvalidArgument("solve_linearized: direction must have one value per triangle");
  StateField phi;
  phi.mesh = op.mesh_ptr();
  phi.coefficients = t.solve(op.control_mass() * w);
  return phi;
}

StateField solve_linearized(const NonlocalOperator &op, const Nonlinearity &a,
                            const StateField &u, const Vector &w)
{
  return solve_linearized(op, TangentOperator(op, a, u.coefficients), w);
}

StateField second_state_derivative(const NonlocalOperator &op, const TangentOperator &t,
                                   const Nonlinearity &a, const StateField &u,
                                   const StateField &phi1, const StateField &phi2)
{
  const TriangleMesh &m = op.mesh();
  check_size(m, phi1.coefficients, "second_state_derivative");
  check_size(m, phi2.coefficients, "second_state_derivative");
  StateField psi;
  psi.mesh = op.mesh_ptr();
  if (a.vanishes)
  {
    psi.coefficients = Vector::Zero(m.num_interior());
    return psi;
  }
  const Vector b = scalar_load(m, [&](int t, const Barycentric &l, const Point &x) {
    return a.d2a(x, evaluate_p1(m, u.coefficients, t, l)) *
           evaluate_p1(m, phi1.coefficients, t, l) * evaluate_p1(m, phi2.coefficients, t, l);
  });
  psi.coefficients = -t.solve(b);
  return psi;
}

StateField second_state_derivative(const NonlocalOperator &op, const Nonlinearity &a,
                                   const StateField &u, const StateField &phi1,
                                   const StateField &phi2)
{
  return second_state_derivative(op, TangentOperator(op, a, u.coefficients), a, u, phi1, phi2);
}

double integrate_cost(const TriangleMesh &m, const CostIntegrand &L, const Vector &u)
{
  check_size(m, u, "integrate_cost");
  double j = 0.0;
  for_each_point(m, [&](int t, const Barycentric &l, const Point &x, double w) {
    j += w * L.L(x, evaluate_p1(m, u, t, l));
  });
  return j;
}

}  // namespace fraclap
