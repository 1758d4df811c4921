// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "fraclap/assembly.hpp"
#include "fraclap/error.hpp"
#include "far_field.hpp"
#include "panel_quadrature.hpp"

namespace fraclap
{

void QuadratureConfig::validate() const
{
  auto fail = [](const std::string &what) { throw InvalidArgument("quadrature: " + what); };
  if (touching_points < 1 || touching_points > 32)
    fail("touching_points must be in [1, 32]");
  if (disjoint_points < 1 || 2 * disjoint_points - 1 > max_triangle_rule_order)
    fail("disjoint_points must be in [1, " + std::to_string((max_triangle_rule_order + 1) / 2) +
         "]");
  if (!(far_separation > 0.0))
    fail("far_separation must be positive");
  if (near_max_depth < 0 || near_max_depth > 12)
    fail("near_max_depth must be in [0, 12]");
  if (complement_order < 1 || complement_order > max_triangle_rule_order)
    fail("complement_order must be in [1, " + std::to_string(max_triangle_rule_order) + "]");
  if (complement_points < 1 || complement_points > 64)
    fail("complement_points must be in [1, 64]");
  if (threads < 1)
    fail("threads must be >= 1");
}

int QuadratureConfig::disjoint_rule_order() const { return 2 * disjoint_points - 1; }

namespace
{

struct Accumulator
{
  DenseMatrix a;
  std::vector<double> selfw;
};

}  // namespace

DenseMatrix assemble_stiffness(const TriangleMesh &m, const KernelParams &k,
                               const QuadratureConfig &q)
{
  q.validate();
  const int n = m.num_interior();
  const int nt = m.num_triangles();
  const detail::PanelIntegrator panels(k.s, q);
  const detail::ComplementWeight psi(m, k.s);
  const TriangleRule &rule = panels.disjoint_rule();
  const int nq = static_cast<int>(rule.size());

  std::vector<std::array<Point, 3>> corners(nt);
  std::vector<double> diam(nt);
  std::vector<char> has_dof(nt, 0);
  std::vector<Point> qx(static_cast<std::size_t>(nt) * nq);
  std::vector<double> qw(static_cast<std::size_t>(nt) * nq);
  std::vector<double> lam(static_cast<std::size_t>(nq) * 3);
  for (int p = 0; p < nq; ++p)
    for (int a = 0; a < 3; ++a)
      lam[p * 3 + a] = rule[p].bary[a];
  for (int t = 0; t < nt; ++t)
  {
    corners[t] = m.corners(t);
    diam[t] = detail::triangle_diameter(corners[t]);
    for (int v : m.triangle(t))
      if (!m.is_boundary(v))
        has_dof[t] = 1;
    for (int p = 0; p < nq; ++p)
    {
      qx[t * nq + p] = from_barycentric(corners[t], rule[p].bary);
      qw[t * nq + p] = rule[p].weight * m.area(t);
    }
  }

  std::vector<double> px(qx.size()), py(qx.size()), wl(qx.size() * 3);
  for (std::size_t j = 0; j < qx.size(); ++j)
  {
    px[j] = qx[j].x;
    py[j] = qx[j].y;
    const int p = static_cast<int>(j % nq);
    for (int b = 0; b < 3; ++b)
      wl[b * qx.size() + j] = qw[j] * lam[p * 3 + b];
  }
  const detail::FarPoints pts{px.data(), py.data(), qw.data()};
  std::vector<std::vector<int>> vertex_triangles(m.num_vertices());
  for (int t = 0; t < nt; ++t)
    for (int v : m.triangle(t))
      vertex_triangles[v].push_back(t);

  const int nthreads = q.threads;
  std::vector<Accumulator> acc(nthreads);

  auto work = [&](int tid) {
    Accumulator &ac = acc[tid];
    ac.a = DenseMatrix::Zero(n, n);
    ac.selfw.assign(qx.size(), 0.0);
    DenseMatrix &A = ac.a;
    detail::LocalBlock blk;
    auto scatter = [&](const int *verts, int nv, double f) {
      for (int a = 0; a < nv; ++a)
      {
        const int i = m.interior_index(verts[a]);
        if (i < 0)
          continue;
        for (int b = 0; b < nv; ++b)
        {
          const int j = m.interior_index(verts[b]);
          if (j >= 0)
            A(i, j) += f * blk[a * 6 + b];
        }
      }
    };
    std::vector<double> mask(qx.size(), 0.0), col(qx.size(), 0.0);
    std::vector<double> g(qx.size() * 3, 0.0);
    std::vector<int> stamp(nt, -1), far;
    double row[32];

    for (int t1 = tid; t1 < nt; t1 += nthreads)
    {
      const auto &tri1 = m.triangle(t1);
      const auto &c1 = corners[t1];
      if (has_dof[t1])
      {
        panels.identical(c1, blk);
        scatter(tri1.data(), 3, 0.5);
        detail::complement_block(m, t1, psi, q, blk);
        scatter(tri1.data(), 3, 1.0);
      }
      for (int v : tri1)
        for (int t2 : vertex_triangles[v])
          stamp[t2] = t1;
      far.clear();
      const std::size_t j0 = static_cast<std::size_t>(t1 + 1) * nq;
      std::fill(mask.begin() + j0, mask.end(), 0.0);
      for (int t2 = t1 + 1; t2 < nt; ++t2)
      {
        if (!has_dof[t1] && !has_dof[t2])
          continue;
        const auto &tri2 = m.triangle(t2);
        const auto &c2 = corners[t2];
        if (stamp[t2] == t1)
        {
          std::array<int, 3> l1, l2;
          const int shared = shared_vertices(m, t1, t2, l1, l2);
          if (shared == 2)
          {
            panels.shared_edge(c1[l1[0]], c1[l1[1]], c1[l1[2]], c2[l2[2]], blk);
            const int v[4] = {tri1[l1[0]], tri1[l1[1]], tri1[l1[2]], tri2[l2[2]]};
            scatter(v, 4, 1.0);
          }
          else
          {
            panels.shared_vertex(c1[l1[0]], c1[l1[1]], c1[l1[2]], c2[l2[1]], c2[l2[2]], blk);
            const int v[5] = {tri1[l1[0]], tri1[l1[1]], tri1[l1[2]], tri2[l2[1]], tri2[l2[2]]};
            scatter(v, 5, 1.0);
          }
          continue;
        }
        if (!panels.is_far(c1, diam[t1], c2, diam[t2]))
        {
          panels.disjoint(c1, c2, blk);
          const int v[6] = {tri1[0], tri1[1], tri1[2], tri2[0], tri2[1], tri2[2]};
          scatter(v, 6, 1.0);
          continue;
        }
        std::fill_n(mask.begin() + static_cast<std::size_t>(t2) * nq, nq, 1.0);
        far.push_back(t2);
      }
      if (far.empty())
        continue;

      // far pairs: self blocks through quadrature-point weights, cross blocks directly
      const std::size_t np = qx.size();
      const std::size_t o = static_cast<std::size_t>(t1) * nq;
      const int jb = static_cast<int>(static_cast<std::size_t>(far.front()) * nq);
      const int je = static_cast<int>(static_cast<std::size_t>(far.back() + 1) * nq);
      detail::far_interactions(nq, &px[o], &py[o], &qw[o], lam.data(), pts, mask.data(), jb, je,
                               k.s, row, col.data(), &g[0], &g[np], &g[2 * np]);
      for (int p = 0; p < nq; ++p)
        ac.selfw[o + p] += qw[o + p] * row[p];

      int gi[3];
      bool any_i = false;
      for (int a = 0; a < 3; ++a)
      {
        gi[a] = m.interior_index(tri1[a]);
        any_i |= gi[a] >= 0;
      }
      if (any_i)
      {
        for (int t2 : far)
        {
          const auto &tri2 = m.triangle(t2);
          const std::size_t r0 = static_cast<std::size_t>(t2) * nq;
          for (int b = 0; b < 3; ++b)
          {
            const int jb2 = m.interior_index(tri2[b]);
            if (jb2 < 0)
              continue;
            const double *wlb = &wl[b * np + r0];
            for (int a = 0; a < 3; ++a)
            {
              if (gi[a] < 0)
                continue;
              const double *ga = &g[a * np + r0];
              double xab = 0.0;
              for (int r = 0; r < nq; ++r)
                xab += ga[r] * wlb[r];
              A(gi[a], jb2) -= 2.0 * xab;
            }
          }
        }
      }
      for (int a = 0; a < 3; ++a)
        std::fill(g.begin() + a * np + jb, g.begin() + a * np + je, 0.0);
    }
    for (std::size_t j = 0; j < qx.size(); ++j)
      ac.selfw[j] += qw[j] * col[j];
  };

  if (nq > 32)
    throw InvalidArgument("disjoint rule has too many points");
  if (nthreads == 1)
    work(0);
  else
  {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back(work, t);
    for (auto &th : pool)
      th.join();
  }

  DenseMatrix A = std::move(acc[0].a);
  std::vector<double> selfw = std::move(acc[0].selfw);
  for (int t = 1; t < nthreads; ++t)
  {
    A += acc[t].a;
    for (std::size_t i = 0; i < selfw.size(); ++i)
      selfw[i] += acc[t].selfw[i];
    acc[t].a.resize(0, 0);
  }
  for (int t = 0; t < nt; ++t)
  {
    const auto &tri = m.triangle(t);
    for (int a = 0; a < 3; ++a)
    {
      const int i = m.interior_index(tri[a]);
      if (i < 0)
        continue;
      for (int b = 0; b < 3; ++b)
      {
        const int j = m.interior_index(tri[b]);
        if (j < 0)
          continue;
        double v = 0.0;
        for (int p = 0; p < nq; ++p)
          v += lam[p * 3 + a] * lam[p * 3 + b] * selfw[t * nq + p];
        A(i, j) += v;
      }
    }
  }
  DenseMatrix K = A + A.transpose();
  K *= 0.5 * k.cns;
  return K;
}

}  // namespace fraclap
