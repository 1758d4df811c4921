// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <iomanip>
#include <ostream>
#include <utility>
#include <vector>

#include "fraclap/assembly.hpp"
#include "fraclap/error.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap
{

SparseMatrix assemble_mass(const TriangleMesh &m)
{
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * static_cast<std::size_t>(m.num_triangles()));
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto &tri = m.triangle(t);
    const double a = m.area(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trip.emplace_back(tri[i], tri[j], a * (i == j ? 1.0 / 6.0 : 1.0 / 12.0));
  }
  SparseMatrix M(m.num_vertices(), m.num_vertices());
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

SparseMatrix assemble_weighted_mass(const TriangleMesh &m, const QuadCoefficient &c, int order)
{
  const TriangleRule &rule = reference_quadrature(order);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * static_cast<std::size_t>(m.num_triangles()));
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto &tri = m.triangle(t);
    const auto corners = m.corners(t);
    double loc[3][3] = {};
    for (const auto &q : rule)
    {
      const double cv = c(t, q.bary, from_barycentric(corners, q.bary));
      if (cv < 0.0)
        throw NumericalError("negative coefficient in weighted mass matrix");
      const double w = q.weight * m.area(t) * cv;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          loc[i][j] += w * q.bary[i] * q.bary[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trip.emplace_back(tri[i], tri[j], loc[i][j]);
  }
  SparseMatrix M(m.num_vertices(), m.num_vertices());
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

Vector load_vector(const TriangleMesh &m, const PointFunction &f, int order)
{
  const TriangleRule &rule = reference_quadrature(order);
  Vector b = Vector::Zero(m.num_interior());
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    const auto &tri = m.triangle(t);
    const auto corners = m.corners(t);
    for (const auto &q : rule)
    {
      const double w = q.weight * m.area(t) * f(from_barycentric(corners, q.bary));
      for (int i = 0; i < 3; ++i)
      {
        const int k = m.interior_index(tri[i]);
        if (k >= 0)
          b[k] += w * q.bary[i];
      }
    }
  }
  return b;
}

SparseMatrix restrict_to_interior(const TriangleMesh &m, const SparseMatrix &full)
{
  if (full.rows() != m.num_vertices() || full.cols() != m.num_vertices())
    throw InvalidArgument("restrict_to_interior: matrix size does not match the mesh");
  std::vector<Eigen::Triplet<double>> trip;
  for (int c = 0; c < full.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(full, c); it; ++it)
    {
      const int i = m.interior_index(static_cast<int>(it.row()));
      const int j = m.interior_index(static_cast<int>(it.col()));
      if (i >= 0 && j >= 0)
        trip.emplace_back(i, j, it.value());
    }
  SparseMatrix r(m.num_interior(), m.num_interior());
  r.setFromTriplets(trip.begin(), trip.end());
  return r;
}

SparseMatrix control_mass(const TriangleMesh &m)
{
  std::vector<Eigen::Triplet<double>> trip;
  for (int t = 0; t < m.num_triangles(); ++t)
    for (int v : m.triangle(t))
    {
      const int i = m.interior_index(v);
      if (i >= 0)
        trip.emplace_back(i, t, m.area(t) / 3.0);
    }
  SparseMatrix r(m.num_interior(), m.num_triangles());
  r.setFromTriplets(trip.begin(), trip.end());
  return r;
}

double energy_norm(const DenseMatrix &K, const Vector &v)
{
  const double q = v.dot(K * v);
  if (q < 0.0)
  {
    const double scale = v.squaredNorm() * K.diagonal().cwiseAbs().maxCoeff();
    if (q < -1e-12 * scale)
      throw NumericalError("negative quadratic form in energy norm");
    return 0.0;
  }
  return std::sqrt(q);
}

void dump_matrix(std::ostream &os, const DenseMatrix &K, bool upper_only)
{
  const auto old = os.precision(17);
  for (Eigen::Index i = 0; i < K.rows(); ++i)
    for (Eigen::Index j = upper_only ? i : 0; j < K.cols(); ++j)
      os << i << ' ' << j << ' ' << K(i, j) << '\n';
  os.precision(old);
}

NonlocalOperator::NonlocalOperator(std::shared_ptr<const TriangleMesh> mesh,
                                   const KernelParams &kernel, const QuadratureConfig &quad)
    : mesh_(std::move(mesh)), kernel_(kernel), quad_(quad)
{
  if (!mesh_)
    throw InvalidArgument("NonlocalOperator: null mesh");
  if (mesh_->num_interior() == 0)
    throw InvalidArgument("NonlocalOperator: mesh has no interior vertices");
  stiffness_ = assemble_stiffness(*mesh_, kernel_, quad_);
  mass_ = assemble_mass(*mesh_);
  interior_mass_ = restrict_to_interior(*mesh_, mass_);
  control_mass_ = fraclap::control_mass(*mesh_);
  ones_load_ = load_vector(*mesh_, [](const Point &) { return 1.0; }, 1);
}

}  // namespace fraclap
