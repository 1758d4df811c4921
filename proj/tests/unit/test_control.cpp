// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "doctest.h"
#include "fraclap/control.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/study.hpp"

using namespace fraclap;

namespace
{

const NonlocalOperator &level2()
{
  static const NonlocalOperator op(std::make_shared<const TriangleMesh>(generate_disk_mesh(2)),
                                   KernelParams::make(0.5));
  return op;
}

OCProblem section_problem() { return manufactured_problem(ManufacturedSolution::make(0.5)); }

ControlField random_control(const TriangleMesh &m, const ControlBounds &b, std::mt19937 &rng)
{
  std::uniform_real_distribution<double> d(b.lo, b.hi);
  ControlField z{Vector(m.num_triangles())};
  for (auto &v : z.values)
    v = d(rng);
  return z;
}

double l2_pair(const TriangleMesh &m, const ControlField &a, const ControlField &b)
{
  double s = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t)
    s += m.area(t) * a.values[t] * b.values[t];
  return s;
}

}  // namespace

TEST_CASE("box projection")
{
  const ControlBounds b;
  CHECK(project_box(b, -0.5) == -0.5);
  CHECK(project_box(b, -2.0) == -0.8);
  CHECK(project_box(b, 0.3) == -0.1);
  CHECK_NOTHROW(b.validate());
  CHECK_THROWS_AS((ControlBounds{-0.1, -0.8}).validate(), InvalidArgument);
  CHECK_THROWS_AS((ControlBounds{0.0, 0.0}).validate(), InvalidArgument);
}

TEST_CASE("cell average")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  AdjointField p;
  p.mesh = op.mesh_ptr();
  p.coefficients = Vector::Constant(op.num_dofs(), 0.7);
  // cells away from the boundary see the constant
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    int boundary = 0;
    for (int v : m.triangle(t))
      boundary += m.is_boundary(v);
    const double q = cell_average(m, p).values[t];
    CHECK(q == doctest::Approx(0.7 * (3 - boundary) / 3.0).epsilon(1e-15));
  }

  const int v = m.interior_vertices()[0];
  p.coefficients.setZero();
  p.coefficients[m.interior_index(v)] = 1.0;
  const ControlField hat = cell_average(m, p);
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto &tri = m.triangle(t);
    const bool contains = tri[0] == v || tri[1] == v || tri[2] == v;
    CHECK(hat.values[t] == doctest::Approx(contains ? 1.0 / 3.0 : 0.0).epsilon(1e-15));
  }

  AdjointField a, b, c;
  a.mesh = b.mesh = c.mesh = op.mesh_ptr();
  a.coefficients = Vector::LinSpaced(op.num_dofs(), -1.0, 1.0);
  b.coefficients = Vector::LinSpaced(op.num_dofs(), 2.0, 0.5);
  c.coefficients = 2.0 * a.coefficients - 3.0 * b.coefficients;
  const Vector lin = 2.0 * cell_average(m, a).values - 3.0 * cell_average(m, b).values;
  CHECK((cell_average(m, c).values - lin).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("reduced cost")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  SUBCASE("tracking the achieved state costs nothing")
  {
    OCProblem prob;
    prob.a = Nonlinearity::cubic();
    prob.forcing = [](const Point &) { return 1.0; };
    prob.alpha = 3.0;
    const ControlField zero = ControlField::constant(m, 0.0);
    const StateField u = solve_state(op, prob.a, state_rhs(prob, op, zero));
    auto mesh = op.mesh_ptr();
    // u_d is the P1 state itself
    prob.L = CostIntegrand::tracking([&](const Point &x) {
      for (int t = 0; t < mesh->num_triangles(); ++t)
      {
        const auto c = mesh->corners(t);
        const double ar = signed_area(c[0], c[1], c[2]);
        const Barycentric l{signed_area(x, c[1], c[2]) / ar, signed_area(c[0], x, c[2]) / ar,
                            signed_area(c[0], c[1], x) / ar};
        if (l[0] >= -1e-12 && l[1] >= -1e-12 && l[2] >= -1e-12)
          return u.eval(t, l);
      }
      return 0.0;
    });
    CHECK(std::abs(reduced_cost(prob, op, zero)) <= 1e-20);
  }
  SUBCASE("additive in alpha")
  {
    OCProblem prob;
    prob.a = Nonlinearity::none();
    prob.L = CostIntegrand::tracking([](const Point &x) { return x.x; });
    prob.forcing = [](const Point &) { return 1.0; };
    const ControlField z = ControlField::constant(m, -0.4);
    const double j1 = reduced_cost(prob, op, z);
    prob.alpha = 2.0;
    const double j2 = reduced_cost(prob, op, z);
    CHECK(j2 - j1 == doctest::Approx(0.5 * z.squared_l2(m)).epsilon(1e-12));
  }
  SUBCASE("manufactured problem at the interpolated optimum")
  {
    const auto ms = ManufacturedSolution::make(0.5);
    const OCProblem prob = manufactured_problem(ms);
    ControlField z{Vector(m.num_triangles())};
    for (int t = 0; t < m.num_triangles(); ++t)
    {
      const auto c = m.corners(t);
      z.values[t] = exact_control(ms, (1.0 / 3.0) * (c[0] + c[1] + c[2]));
    }
    const double j = reduced_cost(prob, op, z);
    CHECK(std::isfinite(j));
    // direct evaluation of the integrand with the same order-4 rule
    const StateField u = solve_state(op, prob.a, state_rhs(prob, op, z));
    double ref = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t)
    {
      const auto c = m.corners(t);
      for (const auto &q : reference_quadrature(4))
      {
        const double d = u.eval(t, q.bary) - desired_state(ms, from_barycentric(c, q.bary));
        ref += q.weight * m.area(t) * 0.5 * d * d;
      }
      ref += 0.5 * m.area(t) * z.values[t] * z.values[t];
    }
    CHECK(std::abs(j - ref) <= 1e-8);
  }
}

TEST_CASE("reduced gradient")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  SUBCASE("without adjoint source the gradient is alpha z")
  {
    OCProblem prob = section_problem();
    prob.L.dL = [](const Point &, double) { return 0.0; };
    const ControlField z = ControlField::constant(m, -0.3);
    const ControlField g = reduced_gradient(prob, op, z);
    CHECK((g.values - z.values).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("central differences at random controls")
  {
    const OCProblem prob = section_problem();
    std::mt19937 rng(7);
    NewtonOptions newton;
    newton.tol = 1e-14;
    for (int k = 0; k < 5; ++k)
    {
      const ControlField z = random_control(m, prob.bounds, rng);
      const ControlField w = random_control(m, {-1.0, 1.0}, rng);
      const double eps = 1e-4;
      ControlField zp = z, zm = z;
      zp.values += eps * w.values;
      zm.values -= eps * w.values;
      const double fd = (reduced_cost(prob, op, zp, newton) - reduced_cost(prob, op, zm, newton)) /
                        (2.0 * eps);
      const double an = l2_pair(m, reduced_gradient(prob, op, z, newton), w);
      CAPTURE(k);
      CHECK(std::abs(fd - an) <= 1e-5 * std::abs(an));
    }
  }
  SUBCASE("second order accuracy of central differences")
  {
    const OCProblem prob = section_problem();
    std::mt19937 rng(11);
    NewtonOptions newton;
    newton.tol = 1e-14;
    const ControlField z = random_control(m, prob.bounds, rng);
    const ControlField w = random_control(m, {-1.0, 1.0}, rng);
    const double an = l2_pair(m, reduced_gradient(prob, op, z, newton), w);
    double err[2];
    const double eps[2] = {0.2, 0.1};
    for (int k = 0; k < 2; ++k)
    {
      ControlField zp = z, zm = z;
      zp.values += eps[k] * w.values;
      zm.values -= eps[k] * w.values;
      err[k] = std::abs((reduced_cost(prob, op, zp, newton) - reduced_cost(prob, op, zm, newton)) /
                            (2.0 * eps[k]) -
                        an);
    }
    CAPTURE(err[0]);
    CAPTURE(err[1]);
    CHECK(err[0] / err[1] > 3.5);
    CHECK(err[0] / err[1] < 4.5);
  }
}

TEST_CASE("second variation")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  const OCProblem prob = section_problem();
  const ControlField z = ControlField::constant(m, -0.4);
  CHECK(second_variation(prob, op, z, ControlField::constant(m, 0.0)) == 0.0);

  SUBCASE("linear state")
  {
    OCProblem lin = prob;
    lin.a = Nonlinearity::none();
    Vector wv(m.num_triangles());
    for (int t = 0; t < m.num_triangles(); ++t)
      wv[t] = std::sin(0.3 * t);
    const ControlField w{wv};
    const StateField u = solve_state(op, lin.a, state_rhs(lin, op, z));
    const StateField phi = solve_linearized(op, lin.a, u, w.values);
    const double expected =
        phi.coefficients.dot(op.interior_mass() * phi.coefficients) + w.squared_l2(m);
    const double v = second_variation(lin, op, z, w);
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("gradient differences")
  {
    std::mt19937 rng(3);
    NewtonOptions newton;
    newton.tol = 1e-14;
    const ControlField w = random_control(m, {-1.0, 1.0}, rng);
    const double j2 = second_variation(prob, op, z, w, newton);
    double err[2];
    const double eps[2] = {0.1, 0.05};
    for (int k = 0; k < 2; ++k)
    {
      ControlField zp = z, zm = z;
      zp.values += eps[k] * w.values;
      zm.values -= eps[k] * w.values;
      const ControlField gp = reduced_gradient(prob, op, zp, newton);
      const ControlField gm = reduced_gradient(prob, op, zm, newton);
      ControlField dg{(gp.values - gm.values) / (2.0 * eps[k])};
      err[k] = std::abs(l2_pair(m, dg, w) - j2);
    }
    CAPTURE(j2);
    CAPTURE(err[0]);
    CAPTURE(err[1]);
    CHECK(err[1] <= 1e-3 * std::abs(j2));
    CHECK(err[0] / err[1] > 3.5);
    CHECK(err[0] / err[1] < 4.5);
  }
}

TEST_CASE("OCP solver on the manufactured problem")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  const OCProblem prob = section_problem();
  const ControlField z0 = ControlField::constant(m, -0.45);
  const OCPSolution sol = solve_ocp(prob, op, z0);
  CHECK(sol.iterations <= 30);
  CHECK(sol.residual <= 1e-10);
  CHECK(sol.z.admissible(prob.bounds));

  // fixed point of the projected adjoint map
  const ControlField q = cell_average(m, sol.p);
  double vi = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t)
    vi = std::max(vi, std::abs(sol.z.values[t] - project_box(prob.bounds, -q.values[t])));
  CHECK(vi <= 1e-10);

  // sign conditions of the gradient
  const ControlField g = reduced_gradient(prob, op, sol.z);
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const double zt = sol.z.values[t];
    if (zt == prob.bounds.lo)
      CHECK(g.values[t] >= -1e-8);
    else if (zt == prob.bounds.hi)
      CHECK(g.values[t] <= 1e-8);
    else
      CHECK(std::abs(g.values[t]) <= 1e-8);
  }
  CHECK(sol.cost_history.size() == static_cast<std::size_t>(sol.iterations));
}

TEST_CASE("OCP limit cases")
{
  const auto &op = level2();
  const auto &m = op.mesh();
  SUBCASE("pinned box")
  {
    OCProblem prob = section_problem();
    prob.bounds = {-0.1 - 1e-16, -0.1};
    const OCPSolution sol = solve_ocp(prob, op, ControlField::constant(m, prob.bounds.lo));
    CHECK(sol.residual <= 1e-10);
    CHECK((sol.z.values.array() - prob.bounds.lo).abs().maxCoeff() <= 1e-15);
    const StateField u = solve_state(op, prob.a, state_rhs(prob, op, sol.z));
    CHECK((u.coefficients - sol.u.coefficients).cwiseAbs().maxCoeff() <= 1e-9);
  }
  SUBCASE("large alpha pushes the control to the bound nearest zero")
  {
    OCProblem prob = section_problem();
    prob.alpha = 1e6;
    const OCPSolution sol = solve_ocp(prob, op, ControlField::constant(m, -0.45));
    CHECK((sol.z.values.array() + 0.1).abs().maxCoeff() <= 1e-4);
  }
  SUBCASE("unreachable tolerance")
  {
    OCPOptions opt;
    opt.tol = 1e-30;
    opt.maxit = 5;
    bool thrown = false;
    try
    {
      solve_ocp(section_problem(), op, ControlField::constant(m, -0.45), opt);
    }
    catch (const ConvergenceError &e)
    {
      thrown = std::string(e.what()).find("maxit exceeded") != std::string::npos;
    }
    CHECK(thrown);
  }
  SUBCASE("invalid input")
  {
    CHECK_THROWS_AS(solve_ocp(section_problem(), op, ControlField::constant(m, 0.0)),
                    InvalidArgument);
    OCProblem prob = section_problem();
    prob.alpha = 0.0;
    CHECK_THROWS_AS(solve_ocp(prob, op, ControlField::constant(m, -0.45)), InvalidArgument);
  }
}

TEST_CASE("active sets depend only on the ratio of adjoint and alpha")
{
  // scaling the tracking term and alpha by the same factor scales p and keeps -q / alpha
  const auto &op = level2();
  const auto &m = op.mesh();
  const auto ms = ManufacturedSolution::make(0.5);
  OCProblem a = manufactured_problem(ms);
  OCProblem b = a;
  const double lambda = 4.0;
  b.alpha *= lambda;
  const auto base = a.L;
  b.L.L = [base, lambda](const Point &x, double u) { return lambda * base.L(x, u); };
  b.L.dL = [base, lambda](const Point &x, double u) { return lambda * base.dL(x, u); };
  b.L.d2L = [base, lambda](const Point &x, double u) { return lambda * base.d2L(x, u); };
  const OCPSolution sa = solve_ocp(a, op, ControlField::constant(m, -0.45));
  const OCPSolution sb = solve_ocp(b, op, ControlField::constant(m, -0.45));
  CHECK((sa.z.values - sb.z.values).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((lambda * sa.p.coefficients - sb.p.coefficients).cwiseAbs().maxCoeff() <= 1e-8);
}
