// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>

#include "doctest.h"
#include "fraclap/assembly.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/pde.hpp"

using namespace fraclap;

namespace
{

const NonlocalOperator &level2()
{
  static const NonlocalOperator op(std::make_shared<const TriangleMesh>(generate_disk_mesh(2)),
                                   KernelParams::make(0.5));
  return op;
}

Vector ones_rhs(const NonlocalOperator &op, double c = 1.0)
{
  return load_vector(op.mesh(), [c](const Point &) { return c; });
}

Vector direction(const TriangleMesh &m)
{
  Vector w(m.num_triangles());
  for (int t = 0; t < m.num_triangles(); ++t)
    w[t] = std::sin(1.0 + 3.0 * t);
  return w;
}

double max_norm(const Vector &v) { return v.lpNorm<Eigen::Infinity>(); }

}  // namespace

TEST_CASE("linear state is one Newton step")
{
  const auto &op = level2();
  const Vector b = ones_rhs(op);
  const StateField u = solve_state(op, Nonlinearity::none(), b);
  CHECK(u.newton_iterations == 1);
  const Vector direct = op.stiffness().llt().solve(b);
  CHECK(max_norm(u.coefficients - direct) <= 1e-12);
}

TEST_CASE("zero data gives the zero state")
{
  const auto &op = level2();
  const StateField u = solve_state(op, Nonlinearity::cubic(), Vector::Zero(op.num_dofs()));
  CHECK(u.newton_iterations == 0);
  CHECK(u.sup_norm() == 0.0);
}

TEST_CASE("cubic state residual and uniqueness")
{
  const auto &op = level2();
  const auto a = Nonlinearity::cubic();
  const Vector b = ones_rhs(op);
  NewtonOptions opt;
  const StateField u0 = solve_state(op, a, b, nullptr, opt);
  CHECK(u0.newton_iterations <= 8);
  // residual recomputed outside the Newton loop
  CHECK(max_norm(state_residual(op, a, b, u0.coefficients)) <= opt.tol);
  CHECK(u0.residual <= opt.tol);
  CHECK(u0.coefficients.size() == op.num_dofs());

  for (const double c : {1.0, -1.0})
  {
    StateField g;
    g.mesh = op.mesh_ptr();
    g.coefficients = Vector::Constant(op.num_dofs(), c);
    const StateField u = solve_state(op, a, b, &g, opt);
    CHECK(max_norm(u.coefficients - u0.coefficients) <= 10.0 * opt.tol);
  }
}

TEST_CASE("Newton reports failure")
{
  const auto &op = level2();
  NewtonOptions opt;
  opt.maxit = 1;
  opt.tol = 1e-14;
  CHECK_THROWS_AS(solve_state(op, Nonlinearity::cubic(), ones_rhs(op, 50.0), nullptr, opt),
                  ConvergenceError);
  opt = {};
  opt.tol = 0.0;
  CHECK_THROWS_AS(solve_state(op, Nonlinearity::cubic(), ones_rhs(op), nullptr, opt),
                  InvalidArgument);
  CHECK_THROWS_AS(solve_state(op, Nonlinearity::cubic(), Vector::Zero(3)), InvalidArgument);
}

TEST_CASE("negative derivative of the nonlinearity is rejected")
{
  const auto &op = level2();
  Nonlinearity bad;
  bad.a = [](const Point &, double u) { return -u; };
  bad.da = [](const Point &, double) { return -1.0; };
  bad.d2a = [](const Point &, double) { return 0.0; };
  CHECK_THROWS_AS(solve_state(op, bad, ones_rhs(op)), NumericalError);
}

TEST_CASE("adjoint")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  const Vector b = ones_rhs(op);
  SUBCASE("vanishing cost derivative")
  {
    CostIntegrand L = CostIntegrand::tracking([](const Point &) { return 0.0; });
    L.dL = [](const Point &, double) { return 0.0; };
    const StateField u = solve_state(op, Nonlinearity::cubic(), b);
    CHECK(solve_adjoint(op, Nonlinearity::cubic(), L, u).sup_norm() == 0.0);
  }
  SUBCASE("linear reduction")
  {
    const auto L = CostIntegrand::tracking([](const Point &x) { return x.x; });
    const StateField u = solve_state(op, Nonlinearity::none(), b);
    const AdjointField p = solve_adjoint(op, Nonlinearity::none(), L, u);
    const Vector rhs = field_load(m, L.dL, u.coefficients);
    CHECK(max_norm(p.coefficients - op.stiffness().llt().solve(rhs)) <= 1e-12);
  }
  SUBCASE("duality with the linearized state")
  {
    const auto a = Nonlinearity::cubic();
    const auto L = CostIntegrand::tracking([](const Point &x) { return 0.3 - x.y; });
    const StateField u = solve_state(op, a, b);
    const AdjointField p = solve_adjoint(op, a, L, u);
    const Vector rhs = field_load(m, L.dL, u.coefficients);
    for (int k = 0; k < 3; ++k)
    {
      Vector w(m.num_triangles());
      for (int t = 0; t < m.num_triangles(); ++t)
        w[t] = std::cos(0.7 * t + k);
      const StateField phi = solve_linearized(op, a, u, w);
      const double lhs = (op.control_mass() * w).dot(p.coefficients);
      CHECK(std::abs(lhs - rhs.dot(phi.coefficients)) <= 1e-9 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("linearized state")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  const Vector b = ones_rhs(op);
  SUBCASE("trivial cases")
  {
    const StateField u = solve_state(op, Nonlinearity::cubic(), b);
    CHECK(solve_linearized(op, Nonlinearity::cubic(), u, Vector::Zero(m.num_triangles()))
              .sup_norm() == 0.0);
    const Vector w = direction(m);
    const StateField lin = solve_linearized(op, Nonlinearity::none(), u, w);
    CHECK(max_norm(lin.coefficients - op.stiffness().llt().solve(op.control_mass() * w)) <=
          1e-12);
    CHECK_THROWS_AS(solve_linearized(op, Nonlinearity::none(), u, Vector::Zero(2)),
                    InvalidArgument);
  }
  SUBCASE("central differences of the control-to-state map")
  {
    const auto a = Nonlinearity::cubic();
    const Vector base = ones_rhs(op, 8.0);
    const Vector w = direction(m);
    const Vector mw = op.control_mass() * w;
    NewtonOptions opt;
    opt.tol = 1e-13;
    const StateField u = solve_state(op, a, base, nullptr, opt);
    const StateField phi = solve_linearized(op, a, u, w);
    double err[2];
    const double eps[2] = {1e-3, 5e-4};
    for (int k = 0; k < 2; ++k)
    {
      const Vector up = solve_state(op, a, base + eps[k] * mw, &u, opt).coefficients;
      const Vector um = solve_state(op, a, base - eps[k] * mw, &u, opt).coefficients;
      err[k] = max_norm((up - um) / (2.0 * eps[k]) - phi.coefficients);
    }
    const double ratio = err[0] / err[1];
    CAPTURE(err[0]);
    CAPTURE(err[1]);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
}

TEST_CASE("second state derivative")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  const Vector b = ones_rhs(op, 8.0);
  const Vector w = direction(m);
  SUBCASE("vanishes for linear problems and zero directions")
  {
    const auto a = Nonlinearity::none();
    const StateField u = solve_state(op, a, b);
    const StateField phi = solve_linearized(op, a, u, w);
    CHECK(second_state_derivative(op, a, u, phi, phi).sup_norm() == 0.0);
    const auto c = Nonlinearity::cubic();
    const StateField uc = solve_state(op, c, b);
    StateField zero = phi;
    zero.coefficients.setZero();
    CHECK(second_state_derivative(op, c, uc, zero, phi).sup_norm() == 0.0);
  }
  SUBCASE("matches the second central difference")
  {
    const auto a = Nonlinearity::cubic();
    const Vector mw = op.control_mass() * w;
    NewtonOptions opt;
    opt.tol = 1e-13;
    const StateField u = solve_state(op, a, b, nullptr, opt);
    const StateField phi = solve_linearized(op, a, u, w);
    const StateField psi = second_state_derivative(op, a, u, phi, phi);
    CHECK(psi.sup_norm() > 0.0);
    double err[2];
    const double eps[2] = {0.4, 0.2};
    for (int k = 0; k < 2; ++k)
    {
      const Vector up = solve_state(op, a, b + eps[k] * mw, &u, opt).coefficients;
      const Vector um = solve_state(op, a, b - eps[k] * mw, &u, opt).coefficients;
      const Vector d2 = (up - 2.0 * u.coefficients + um) / (eps[k] * eps[k]);
      err[k] = max_norm(d2 - psi.coefficients);
    }
    CAPTURE(err[0]);
    CAPTURE(err[1]);
    CHECK(err[0] / err[1] > 3.5);
    CHECK(err[0] / err[1] < 4.5);
  }
}

TEST_CASE("state sup norm stays bounded under refinement")
{
  double lo = 1e300, hi = 0.0;
  for (int level = 1; level <= 3; ++level)
  {
    const NonlocalOperator op(std::make_shared<const TriangleMesh>(generate_disk_mesh(level)),
                              KernelParams::make(0.5));
    const StateField u = solve_state(op, Nonlinearity::cubic(), ones_rhs(op));
    CHECK(u.newton_iterations <= 8);
    lo = std::min(lo, u.sup_norm());
    hi = std::max(hi, u.sup_norm());
  }
  CHECK(hi < 1.0);
  CHECK(hi / lo < 1.5);
}

TEST_CASE("cost integral and P1 evaluation")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  const Vector u = Vector::Ones(op.num_dofs());
  // the interpolant of 1 is 1 away from the boundary ring
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    bool inner = true;
    for (int v : m.triangle(t))
      inner = inner && !m.is_boundary(v);
    if (inner)
      CHECK(evaluate_p1(m, u, t, {0.2, 0.3, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const auto L = CostIntegrand::tracking([](const Point &) { return 0.0; });
  const Vector zero = Vector::Zero(op.num_dofs());
  CHECK(integrate_cost(m, L, zero) == 0.0);
  // L = u^2 / 2 integrates to u^T M u / 2 for P1 u, exact at order 4
  const Vector v = Vector::LinSpaced(op.num_dofs(), -1.0, 1.0);
  CHECK(integrate_cost(m, L, v) ==
        doctest::Approx(0.5 * v.dot(op.interior_mass() * v)).epsilon(1e-13));
}
