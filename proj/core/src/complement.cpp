// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "fraclap/error.hpp"
#include "far_field.hpp"
#include "panel_quadrature.hpp"

namespace fraclap
{

namespace detail
{

namespace
{

using double_precision =
    boost::math::policies::policy<boost::math::policies::promote_double<false>>;

}  // namespace

ComplementWeight::ComplementWeight(const TriangleMesh &m, double s)
    : s_(s), short_rule_(gauss_legendre(4))
{
  for (const auto &[ia, ib] : m.boundary_edges())
  {
    const Point a = m.vertex(ia);
    const Point d = m.vertex(ib) - a;
    const double len = norm(d);
    ax_.push_back(a.x);
    ay_.push_back(a.y);
    ux_.push_back(d.x / len);
    uy_.push_back(d.y / len);
    len_.push_back(len);
  }
}

double ComplementWeight::operator()(const Point &x) const
{
  const int ne = static_cast<int>(len_.size());
  const EdgeSet edges{ne, ax_.data(), ay_.data(), ux_.data(), uy_.data(), len_.data()};
  thread_local std::vector<double> is_long;
  thread_local std::vector<double> scratch;
  is_long.resize(len_.size());
  scratch.resize(4 * len_.size());
  double min_d = 0.0;
  double sum = short_edge_sum(edges, x.x, x.y, s_, short_rule_.nodes.data(),
                              short_rule_.weights.data(), is_long.data(), scratch.data(), min_d);
  if (!(min_d > 0.0))
    throw NumericalError("complement weight evaluated outside the domain");
  const double b = s_ + 0.5;
  // int_0^phi cos^{2s}
  auto primitive = [&](double phi) {
    const double sn = std::sin(phi);
    const double v = 0.5 * boost::math::beta(0.5, b, sn * sn, double_precision());
    return phi < 0.0 ? -v : v;
  };
  for (int i = 0; i < ne; ++i)
  {
    if (is_long[i] == 0.0)
      continue;
    const double rx = x.x - ax_[i], ry = x.y - ay_[i];
    const double d = ux_[i] * ry - uy_[i] * rx;
    const double sa = -(rx * ux_[i] + ry * uy_[i]);
    const double pa = std::atan2(sa, d);
    const double pb = std::atan2(sa + len_[i], d);
    sum += std::pow(d, -2.0 * s_) * (primitive(pb) - primitive(pa));
  }
  return sum / (2.0 * s_);
}

namespace
{

constexpr double grading = 2.0;

std::array<Point, 3> corner_points(const TriangleMesh &m, int t) { return m.corners(t); }

void add_point(const std::array<Point, 3> &c, const Barycentric &l, double w,
               const ComplementWeight &psi, LocalBlock &out)
{
  const double v = w * psi(from_barycentric(c, l));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      out[a * 6 + b] += v * l[a] * l[b];
}

}  // namespace

void complement_block(const TriangleMesh &m, int t, const ComplementWeight &psi,
                      const QuadratureConfig &q, LocalBlock &out)
{
  out.fill(0.0);
  const auto &tri = m.triangle(t);
  const auto c = corner_points(m, t);
  const double area = m.area(t);

  std::array<bool, 3> bvert{};
  int edge_opposite = -1;  // local vertex opposite a boundary edge
  for (int k = 0; k < 3; ++k)
    bvert[k] = m.is_boundary(tri[k]);
  for (const auto &[a, b] : m.boundary_edges())
    for (int k = 0; k < 3; ++k)
    {
      const int u = tri[(k + 1) % 3], v = tri[(k + 2) % 3];
      if ((a == u && b == v) || (a == v && b == u))
        edge_opposite = k;
    }

  if (!bvert[0] && !bvert[1] && !bvert[2])
  {
    for (const auto &qp : reference_quadrature(q.complement_order))
      add_point(c, qp.bary, qp.weight * area, psi, out);
    return;
  }

  const GaussRule g = gauss_legendre(q.complement_points);
  if (edge_opposite >= 0)
  {
    // x = c_k + u ((1 - v) c_{k+1} + v c_{k+2} - c_k); the boundary edge is u = 1, graded
    // polynomially toward it and sigmoidally toward both of its endpoints.
    const int k = edge_opposite, k1 = (k + 1) % 3, k2 = (k + 2) % 3;
    for (std::size_t i = 0; i < g.size(); ++i)
    {
      const double tau = g.nodes[i];
      const double omu = std::pow(1.0 - tau, grading);
      const double u = 1.0 - omu;
      const double du = grading * std::pow(1.0 - tau, grading - 1.0);
      for (std::size_t j = 0; j < g.size(); ++j)
      {
        const double sg = g.nodes[j];
        const double pa = std::pow(sg, grading), pb = std::pow(1.0 - sg, grading);
        const double v = pa / (pa + pb);
        const double dv = grading * (std::pow(sg, grading - 1.0) * pb +
                                     pa * std::pow(1.0 - sg, grading - 1.0)) /
                          ((pa + pb) * (pa + pb));
        Barycentric l{};
        l[k] = omu;
        l[k1] = u * (1.0 - v);
        l[k2] = u * v;
        add_point(c, l, g.weights[i] * g.weights[j] * du * dv * u * 2.0 * area, psi, out);
      }
    }
    return;
  }

  // boundary vertex only: graded polynomially toward it
  int k = 0;
  while (!bvert[k])
    ++k;
  const int k1 = (k + 1) % 3, k2 = (k + 2) % 3;
  for (std::size_t i = 0; i < g.size(); ++i)
  {
    const double u = std::pow(g.nodes[i], grading);
    const double du = grading * std::pow(g.nodes[i], grading - 1.0);
    for (std::size_t j = 0; j < g.size(); ++j)
    {
      const double v = g.nodes[j];
      Barycentric l{};
      l[k] = 1.0 - u;
      l[k1] = u * (1.0 - v);
      l[k2] = u * v;
      add_point(c, l, g.weights[i] * g.weights[j] * du * u * 2.0 * area, psi, out);
    }
  }
}

}  // namespace detail

double complement_weight(const TriangleMesh &m, const KernelParams &k, const Point &x)
{
  return detail::ComplementWeight(m, k.s)(x);
}

}  // namespace fraclap
