// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_ASSEMBLY_HPP
#define FRACLAP_ASSEMBLY_HPP

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fraclap/geometry.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/mesh.hpp"

namespace fraclap
{

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

using PointFunction = std::function<double(const Point &)>;

// Coefficient sampled at a quadrature point of triangle `tri`.
using QuadCoefficient = std::function<double(int tri, const Barycentric &, const Point &)>;

struct QuadratureConfig
{
  // Gauss points per parameter direction in the singular transforms of touching pairs.
  int touching_points = 5;
  // Points per direction for disjoint pairs; the triangle rule has degree 2k - 1.
  int disjoint_points = 3;
  // Disjoint pairs whose centroid distance exceeds far_separation * max(diam) use the
  // disjoint rule directly; closer pairs are subdivided until they satisfy the criterion.
  double far_separation = 3.0;
  int near_max_depth = 4;
  // Complement term: triangle rule degree away from the boundary, and Gauss points per
  // direction of the graded product rule on triangles touching the boundary.
  int complement_order = 6;
  int complement_points = 12;
  int threads = 1;

  // Throws InvalidArgument when any field is out of range.
  void validate() const;
  int disjoint_rule_order() const;
};

// psi(x) = int_{R^2 \ Omega_h} |x - y|^{-2-2s} dy for x strictly inside the convex Omega_h.
// Evaluated edge by edge from the polar form (1/2s) oint rho(theta; x)^{-2s} dtheta.
double complement_weight(const TriangleMesh &m, const KernelParams &k, const Point &x);

// Dense matrix over interior DOFs with entries A(phi_i, phi_j).
DenseMatrix assemble_stiffness(const TriangleMesh &m, const KernelParams &k,
                               const QuadratureConfig &q = {});

// Exact P1 mass matrix over all vertices.
SparseMatrix assemble_mass(const TriangleMesh &m);

// int_{Omega_h} c phi_i phi_j over all vertices, order-4 rule. Throws NumericalError when c < 0
// at a quadrature point.
SparseMatrix assemble_weighted_mass(const TriangleMesh &m, const QuadCoefficient &c,
                                    int order = 4);

// int_{Omega_h} f phi_i for interior DOFs, order-4 rule.
Vector load_vector(const TriangleMesh &m, const PointFunction &f, int order = 4);

// Rows/columns of a full vertex matrix restricted to interior DOFs.
SparseMatrix restrict_to_interior(const TriangleMesh &m, const SparseMatrix &full);

// (M_c)_{iT} = int_T phi_i: pairs a piecewise constant control with interior test functions.
SparseMatrix control_mass(const TriangleMesh &m);

// sqrt(v^T K v). Throws NumericalError when the quadratic form is negative beyond roundoff.
double energy_norm(const DenseMatrix &K, const Vector &v);

// "i j value" triplets with 17 significant digits, 0-based; upper triangle only when
// `upper_only` is set.
void dump_matrix(std::ostream &os, const DenseMatrix &K, bool upper_only = false);

//
// Assembled operators of the fractional problem on one mesh.
//
class NonlocalOperator
{
public:
  NonlocalOperator(std::shared_ptr<const TriangleMesh> mesh, const KernelParams &kernel,
                   const QuadratureConfig &quad = {});

  const TriangleMesh &mesh() const { return *mesh_; }
  std::shared_ptr<const TriangleMesh> mesh_ptr() const { return mesh_; }
  const KernelParams &kernel() const { return kernel_; }
  const QuadratureConfig &quadrature() const { return quad_; }

  const DenseMatrix &stiffness() const { return stiffness_; }
  // Full vertex mass matrix and its interior restriction.
  const SparseMatrix &mass() const { return mass_; }
  const SparseMatrix &interior_mass() const { return interior_mass_; }
  const SparseMatrix &control_mass() const { return control_mass_; }
  // int phi_i over interior DOFs.
  const Vector &ones_load() const { return ones_load_; }

  int num_dofs() const { return mesh_->num_interior(); }

private:
  std::shared_ptr<const TriangleMesh> mesh_;
  KernelParams kernel_;
  QuadratureConfig quad_;
  DenseMatrix stiffness_;
  SparseMatrix mass_;
  SparseMatrix interior_mass_;
  SparseMatrix control_mass_;
  Vector ones_load_;
};

}  // namespace fraclap

#endif  // FRACLAP_ASSEMBLY_HPP
