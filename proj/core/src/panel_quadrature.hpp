// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

// Element-pair integrals
//   I_ab = int_T int_T' (phi_a(x) - phi_a(y)) (phi_b(x) - phi_b(y)) |x - y|^{-2-2s} dy dx
// for the basis functions of the union of the two vertex sets. Touching pairs use
// Sauter-Schwab type coordinates in which the homogeneous radial variables are integrated in
// closed form, so the remaining integrands are smooth.

#ifndef FRACLAP_SRC_PANEL_QUADRATURE_HPP
#define FRACLAP_SRC_PANEL_QUADRATURE_HPP

#include <array>
#include <vector>

#include "fraclap/assembly.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap::detail
{

// Row-major local matrix; only the leading n x n block is meaningful.
using LocalBlock = std::array<double, 36>;

class PanelIntegrator
{
public:
  PanelIntegrator(double s, const QuadratureConfig &q);

  // Vertices p[0..2] of T; result over (p0, p1, p2).
  void identical(const std::array<Point, 3> &p, LocalBlock &out) const;

  // Shared edge (p0, p1); p2 is the third vertex of T, q2 that of T'. Result over
  // (p0, p1, p2, q2).
  void shared_edge(const Point &p0, const Point &p1, const Point &p2, const Point &q2,
                   LocalBlock &out) const;

  // Shared vertex p0; (p1, p2) from T and (q1, q2) from T'. Result over (p0, p1, p2, q1, q2).
  void shared_vertex(const Point &p0, const Point &p1, const Point &p2, const Point &q1,
                     const Point &q2, LocalBlock &out) const;

  // Disjoint pair with recursive subdivision until the separation criterion holds. Result
  // over the six vertices (T first).
  void disjoint(const std::array<Point, 3> &p, const std::array<Point, 3> &q,
                LocalBlock &out) const;

  // Admissibility of a disjoint pair for the plain product rule.
  bool is_far(const std::array<Point, 3> &p, double diam_p, const std::array<Point, 3> &q,
              double diam_q) const;

  const TriangleRule &disjoint_rule() const { return *disjoint_rule_; }
  double s() const { return s_; }

private:
  void disjoint_recursive(const std::array<Point, 3> &p, const std::array<Barycentric, 3> &bp,
                          const std::array<Point, 3> &q, const std::array<Barycentric, 3> &bq,
                          int depth, LocalBlock &out) const;

  double s_;
  double far_separation_;
  int near_max_depth_;
  GaussRule edge_rule_;
  GaussRule gauss_;
  const TriangleRule *disjoint_rule_;
};

double triangle_diameter(const std::array<Point, 3> &p);

// psi(x) for all x strictly inside the convex polygon bounded by the boundary edges of m.
class ComplementWeight
{
public:
  ComplementWeight(const TriangleMesh &m, double s);

  // Throws NumericalError when x is not strictly inside.
  double operator()(const Point &x) const;

private:
  // boundary edges a + t u, t in [0, length], u a unit vector
  std::vector<double> ax_, ay_, ux_, uy_, len_;
  double s_;
  GaussRule short_rule_;
};

// int_T lambda_a lambda_b psi for the local vertices of T, with graded subdivision toward
// the boundary.
void complement_block(const TriangleMesh &m, int t, const ComplementWeight &psi,
                      const QuadratureConfig &q, LocalBlock &out);

}  // namespace fraclap::detail

#endif  // FRACLAP_SRC_PANEL_QUADRATURE_HPP
