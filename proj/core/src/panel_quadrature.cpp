// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "panel_quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "far_field.hpp"

namespace fraclap::detail
{

namespace
{

template <int N>
void add_outer(LocalBlock &out, const std::array<double, N> &u, double w)
{
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      out[a * 6 + b] += w * u[a] * u[b];
}

void scale_block(LocalBlock &out, int n, double f)
{
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out[a * 6 + b] *= f;
}

Point centroid(const std::array<Point, 3> &p) { return (1.0 / 3.0) * (p[0] + p[1] + p[2]); }

template <class T>
std::array<std::array<T, 3>, 4> split(const std::array<T, 3> &c)
{
  const T m01 = 0.5 * (c[0] + c[1]);
  const T m12 = 0.5 * (c[1] + c[2]);
  const T m20 = 0.5 * (c[2] + c[0]);
  return {std::array<T, 3>{c[0], m01, m20}, std::array<T, 3>{m01, c[1], m12},
          std::array<T, 3>{m20, m12, c[2]}, std::array<T, 3>{m01, m12, m20}};
}

Barycentric operator+(const Barycentric &a, const Barycentric &b)
{
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
Barycentric operator*(double f, const Barycentric &a) { return {f * a[0], f * a[1], f * a[2]}; }

Barycentric compose(const std::array<Barycentric, 3> &corners, const Barycentric &l)
{
  Barycentric r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      r[k] += l[i] * corners[i][k];
  return r;
}

}  // namespace

double triangle_diameter(const std::array<Point, 3> &p)
{
  return std::sqrt(std::max({norm2(p[1] - p[0]), norm2(p[2] - p[1]), norm2(p[0] - p[2])}));
}

PanelIntegrator::PanelIntegrator(double s, const QuadratureConfig &q)
    : s_(s), far_separation_(q.far_separation), near_max_depth_(q.near_max_depth),
      edge_rule_(gauss_legendre(2 * q.touching_points)), gauss_(gauss_legendre(q.touching_points)),
      disjoint_rule_(&reference_quadrature(q.disjoint_rule_order()))
{
}

void PanelIntegrator::identical(const std::array<Point, 3> &p, LocalBlock &out) const
{
  out.fill(0.0);
  const Point e1 = p[1] - p[0];
  const Point e2 = p[2] - p[0];
  const double ex = -1.0 - s_;
  for (std::size_t q = 0; q < edge_rule_.size(); ++q)
  {
    const double t = edge_rule_.nodes[q];
    const std::array<Point, 3> dirs{Point{t - 1.0, 1.0}, Point{1.0 - t, t}, Point{-1.0, 1.0 - t}};
    for (const auto &d : dirs)
    {
      const Point z = d.x * e1 + d.y * e2;
      const std::array<double, 3> u{-d.x - d.y, d.x, d.y};
      add_outer<3>(out, u, edge_rule_.weights[q] * std::pow(norm2(z), ex));
    }
  }
  const double jac = 2.0 * std::abs(signed_area(p[0], p[1], p[2]));
  const double c_id = 1.0 / ((4.0 - 2.0 * s_) * (3.0 - 2.0 * s_) * (2.0 - 2.0 * s_));
  scale_block(out, 3, 2.0 * c_id * jac * jac);
}

void PanelIntegrator::shared_edge(const Point &p0, const Point &p1, const Point &p2,
                                  const Point &q2, LocalBlock &out) const
{
  out.fill(0.0);
  const Point e = p1 - p0;
  const Point f1 = p2 - p0;
  const Point f2 = q2 - p0;
  const double ex = -1.0 - s_;
  const auto &g = gauss_;
  for (std::size_t i = 0; i < g.size(); ++i)
  {
    const double e2 = g.nodes[i];
    for (std::size_t j = 0; j < g.size(); ++j)
    {
      const double e3 = g.nodes[j];
      const double w = g.weights[i] * g.weights[j];
      // (a1 - b1, a2, b2, jacobian)
      const std::array<std::array<double, 4>, 5> reg{{
          {1.0 - e3, e3, 1.0 - e2, 1.0},
          {e2 - 1.0, 1.0, e2 * (1.0 - e3), e2},
          {-(1.0 - e2 * e3), 1.0 - e2, e2 * e3, e2},
          {1.0 - e2, e2 * (1.0 - e3), 1.0, e2},
          {-(1.0 - e2), 1.0 - e2 * e3, e2, e2},
      }};
      for (const auto &r : reg)
      {
        const double d1 = r[0], a2 = r[1], b2 = r[2];
        const Point z = d1 * e + a2 * f1 - b2 * f2;
        const std::array<double, 4> u{-d1 - a2 + b2, d1, a2, -b2};
        add_outer<4>(out, u, w * r[3] * std::pow(norm2(z), ex));
      }
    }
  }
  const double jac = 4.0 * std::abs(signed_area(p0, p1, p2)) * std::abs(signed_area(p0, p1, q2));
  scale_block(out, 4, jac / ((4.0 - 2.0 * s_) * (3.0 - 2.0 * s_)));
}

void PanelIntegrator::shared_vertex(const Point &p0, const Point &p1, const Point &p2,
                                    const Point &q1, const Point &q2, LocalBlock &out) const
{
  out.fill(0.0);
  const Point a1v = p1 - p0, a2v = p2 - p0;
  const Point b1v = q1 - p0, b2v = q2 - p0;
  const double ex = -1.0 - s_;
  const auto &g = gauss_;
  for (std::size_t i = 0; i < g.size(); ++i)
  {
    const double e1 = g.nodes[i];
    for (std::size_t j = 0; j < g.size(); ++j)
    {
      const double e2 = g.nodes[j];
      for (std::size_t k = 0; k < g.size(); ++k)
      {
        const double e3 = g.nodes[k];
        const double w = g.weights[i] * g.weights[j] * g.weights[k] * e2;
        const Point edge{1.0 - e1, e1};
        const Point inner{e2 * (1.0 - e3), e2 * e3};
        for (int r = 0; r < 2; ++r)
        {
          const Point &a = r == 0 ? edge : inner;
          const Point &b = r == 0 ? inner : edge;
          const Point z = a.x * a1v + a.y * a2v - b.x * b1v - b.y * b2v;
          const std::array<double, 5> u{-(a.x + a.y) + (b.x + b.y), a.x, a.y, -b.x, -b.y};
          add_outer<5>(out, u, w * std::pow(norm2(z), ex));
        }
      }
    }
  }
  const double jac = 4.0 * std::abs(signed_area(p0, p1, p2)) * std::abs(signed_area(p0, q1, q2));
  scale_block(out, 5, jac / (4.0 - 2.0 * s_));
}

bool PanelIntegrator::is_far(const std::array<Point, 3> &p, double diam_p,
                             const std::array<Point, 3> &q, double diam_q) const
{
  const Point d = centroid(p) - centroid(q);
  const double r = far_separation_ * std::max(diam_p, diam_q);
  return dot(d, d) > r * r;
}

void PanelIntegrator::disjoint(const std::array<Point, 3> &p, const std::array<Point, 3> &q,
                               LocalBlock &out) const
{
  out.fill(0.0);
  const std::array<Barycentric, 3> id{Barycentric{1, 0, 0}, Barycentric{0, 1, 0},
                                      Barycentric{0, 0, 1}};
  disjoint_recursive(p, id, q, id, 0, out);
}

void PanelIntegrator::disjoint_recursive(const std::array<Point, 3> &p,
                                         const std::array<Barycentric, 3> &bp,
                                         const std::array<Point, 3> &q,
                                         const std::array<Barycentric, 3> &bq, int depth,
                                         LocalBlock &out) const
{
  const double dp = triangle_diameter(p);
  const double dq = triangle_diameter(q);
  if (depth < near_max_depth_ && !is_far(p, dp, q, dq))
  {
    if (dp >= dq)
    {
      const auto kp = split(p);
      const auto kb = split(bp);
      for (int c = 0; c < 4; ++c)
        disjoint_recursive(kp[c], kb[c], q, bq, depth + 1, out);
    }
    else
    {
      const auto kq = split(q);
      const auto kb = split(bq);
      for (int c = 0; c < 4; ++c)
        disjoint_recursive(p, bp, kq[c], kb[c], depth + 1, out);
    }
    return;
  }
  const auto &rule = *disjoint_rule_;
  const std::size_t nq = rule.size();
  const double ap = std::abs(signed_area(p[0], p[1], p[2]));
  const double aq = std::abs(signed_area(q[0], q[1], q[2]));
  const double ex = -1.0 - s_;
  std::array<Point, 32> ys;
  std::array<Barycentric, 32> lys;
  std::array<double, 32> wy, col{};
  for (std::size_t r = 0; r < nq; ++r)
  {
    ys[r] = from_barycentric(q, rule[r].bary);
    lys[r] = compose(bq, rule[r].bary);
    wy[r] = rule[r].weight * aq;
  }
  std::array<Point, 32> xs;
  std::array<Barycentric, 32> lxs;
  for (std::size_t r = 0; r < nq; ++r)
  {
    xs[r] = from_barycentric(p, rule[r].bary);
    lxs[r] = compose(bp, rule[r].bary);
  }
  std::array<double, 32 * 32> kv;
  for (std::size_t i = 0; i < nq; ++i)
    for (std::size_t r = 0; r < nq; ++r)
      kv[i * nq + r] = norm2(xs[i] - ys[r]);
  kernel_powers(static_cast<int>(nq * nq), kv.data(), ex, kv.data());
  // T block through row sums, T' block through column sums, cross block directly
  for (std::size_t i = 0; i < nq; ++i)
  {
    const Barycentric &lx = lxs[i];
    const double wx = rule[i].weight * ap;
    double k = 0.0, k0 = 0.0, k1 = 0.0, k2 = 0.0;
    for (std::size_t r = 0; r < nq; ++r)
    {
      const double kr = wy[r] * kv[i * nq + r];
      k += kr;
      k0 += kr * lys[r][0];
      k1 += kr * lys[r][1];
      k2 += kr * lys[r][2];
      col[r] += wx * kr;
    }
    const double kb[3] = {k0, k1, k2};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
      {
        out[a * 6 + b] += wx * k * lx[a] * lx[b];
        out[a * 6 + 3 + b] -= wx * lx[a] * kb[b];
        out[(3 + b) * 6 + a] -= wx * lx[a] * kb[b];
      }
  }
  for (std::size_t r = 0; r < nq; ++r)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        out[(3 + a) * 6 + 3 + b] += col[r] * lys[r][a] * lys[r][b];
}

}  // namespace fraclap::detail
