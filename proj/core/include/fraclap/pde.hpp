// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_PDE_HPP
#define FRACLAP_PDE_HPP

#include <functional>
#include <memory>

#include <Eigen/Cholesky>

#include "fraclap/assembly.hpp"

namespace fraclap
{

using ScalarField = std::function<double(const Point &x, double u)>;

// Monotone nonlinearity a(x, u) with its first two u-derivatives. da >= 0 is checked at
// every quadrature evaluation.
struct Nonlinearity
{
  ScalarField a;
  ScalarField da;
  ScalarField d2a;
  // a == 0 identically; lets callers skip the weighted mass.
  bool vanishes = false;

  static Nonlinearity none();
  // a(u) = u^3
  static Nonlinearity cubic();
};

// Cost integrand L(x, u) with its first two u-derivatives.
struct CostIntegrand
{
  ScalarField L;
  ScalarField dL;
  ScalarField d2L;

  // L = (u - u_d)^2 / 2
  static CostIntegrand tracking(PointFunction u_d);
};

// P1 field over the interior DOFs. Boundary values are zero.
struct NodalField
{
  Vector coefficients;
  std::shared_ptr<const TriangleMesh> mesh;
  int newton_iterations = 0;
  double residual = 0.0;

  double sup_norm() const;
  // Value at barycentric point l of triangle t.
  double eval(int t, const Barycentric &l) const;
};

using StateField = NodalField;
using AdjointField = NodalField;

struct NewtonOptions
{
  double tol = 1e-10;
  int maxit = 50;
  int max_halvings = 20;
};

// Quadrature order for nonlinear terms, adjoint loads and the cost.
inline constexpr int nonlinear_quadrature_order = 4;

// Value of the P1 function with interior coefficients u at (t, l).
double evaluate_p1(const TriangleMesh &m, const Vector &u, int t, const Barycentric &l);

// N(u)_i = int a(x, u_h) phi_i.
Vector nonlinear_term(const TriangleMesh &m, const Nonlinearity &a, const Vector &u);

// int g(x, u_h) phi_i for a generic scalar field g.
Vector field_load(const TriangleMesh &m, const ScalarField &g, const Vector &u);

// W(u)_{ij} = int da(x, u_h) phi_i phi_j over interior DOFs.
SparseMatrix tangent_mass(const TriangleMesh &m, const Nonlinearity &a, const Vector &u);

// K u + N(u) - rhs
Vector state_residual(const NonlocalOperator &op, const Nonlinearity &a, const Vector &rhs,
                      const Vector &u);

//
// Cholesky factorization of K + W(u), shared by the adjoint, linearized and second-order
// solves at one state.
//
class TangentOperator
{
public:
  TangentOperator(const NonlocalOperator &op, const Nonlinearity &a, const Vector &u);

  Vector solve(const Vector &b) const;
  // The state the factorization was built at.
  const Vector &state() const { return state_; }

private:
  Eigen::LLT<DenseMatrix> llt_;
  Vector state_;
};

// Damped Newton for K u + N(u) = rhs from `guess` (zero when null). When `tangent` is given
// and was built at the starting iterate, its factorization is reused for the first step.
// Throws ConvergenceError after maxit steps or a failed line search.
StateField solve_state(const NonlocalOperator &op, const Nonlinearity &a, const Vector &rhs,
                       const StateField *guess = nullptr, const NewtonOptions &opt = {},
                       const TangentOperator *tangent = nullptr);

// (K + W(u)) p = int dL(x, u) phi_i
AdjointField solve_adjoint(const NonlocalOperator &op, const Nonlinearity &a,
                           const CostIntegrand &L, const StateField &u);
AdjointField solve_adjoint(const NonlocalOperator &op, const TangentOperator &t,
                           const CostIntegrand &L, const StateField &u);

// (K + W(u)) phi = M_c w for a per-triangle direction w.
StateField solve_linearized(const NonlocalOperator &op, const Nonlinearity &a,
                            const StateField &u, const Vector &w);
StateField solve_linearized(const NonlocalOperator &op, const TangentOperator &t,
                            const Vector &w);

// (K + W(u)) psi = -int d2a(x, u) phi1 phi2 phi_i
StateField second_state_derivative(const NonlocalOperator &op, const Nonlinearity &a,
                                   const StateField &u, const StateField &phi1,
                                   const StateField &phi2);
StateField second_state_derivative(const NonlocalOperator &op, const TangentOperator &t,
                                   const Nonlinearity &a, const StateField &u,
                                   const StateField &phi1, const StateField &phi2);

// int L(x, u_h)
double integrate_cost(const TriangleMesh &m, const CostIntegrand &L, const Vector &u);

}  // namespace fraclap

#endif  // FRACLAP_PDE_HPP
