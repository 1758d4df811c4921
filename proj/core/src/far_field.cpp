// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "far_field.hpp"

#include <algorithm>
#include <cmath>

namespace fraclap::detail
{

namespace
{

template <bool Half>
double sweep(int n, double x, double y, double w, double l0, double l1, double l2,
             const double *__restrict px, const double *__restrict py,
             const double *__restrict pw, const double *__restrict pm, double ex,
             double *__restrict c, double *__restrict a0, double *__restrict a1,
             double *__restrict a2)
{
  double rs = 0.0;
  for (int j = 0; j < n; ++j)
  {
    const double dx = x - px[j], dy = y - py[j];
    const double r2 = dx * dx + dy * dy;
    double k;
    if constexpr (Half)
      k = pm[j] / (r2 * std::sqrt(r2));
    else
      k = pm[j] * std::exp(ex * std::log(r2));
    rs += k * pw[j];
    c[j] += k * w;
    a0[j] += k * l0;
    a1[j] += k * l1;
    a2[j] += k * l2;
  }
  return rs;
}

template <bool Half>
void kernel_loop(int nq, const double *xp, const double *yp, const double *wp, const double *lam,
                 const FarPoints &pts, const double *mask, int j0, int j1, double ex,
                 double *row, double *col, double *g0, double *g1, double *g2)
{
  const int n = j1 - j0;
  for (int p = 0; p < nq; ++p)
  {
    const double w = wp[p];
    row[p] = sweep<Half>(n, xp[p], yp[p], w, w * lam[3 * p], w * lam[3 * p + 1],
                         w * lam[3 * p + 2], pts.x + j0, pts.y + j0, pts.w + j0, mask + j0, ex,
                         col + j0, g0 + j0, g1 + j0, g2 + j0);
  }
}

}  // namespace

void far_interactions(int nq, const double *xp, const double *yp, const double *wp,
                      const double *lam, const FarPoints &pts, const double *mask, int j0,
                      int j1, double s, double *row, double *col, double *g0, double *g1,
                      double *g2)
{
  if (s == 0.5)
    kernel_loop<true>(nq, xp, yp, wp, lam, pts, mask, j0, j1, -1.5, row, col, g0, g1, g2);
  else
    kernel_loop<false>(nq, xp, yp, wp, lam, pts, mask, j0, j1, -1.0 - s, row, col, g0, g1, g2);
}

void kernel_powers(int n, const double *__restrict r2, double ex, double *__restrict out)
{
  if (ex == -1.5)
    for (int i = 0; i < n; ++i)
      out[i] = 1.0 / (r2[i] * std::sqrt(r2[i]));
  else
    for (int i = 0; i < n; ++i)
      out[i] = std::exp(ex * std::log(r2[i]));
}

namespace
{

void edge_angles(int n, const double *__restrict ax, const double *__restrict ay,
                 const double *__restrict ux, const double *__restrict uy,
                 const double *__restrict len, double x, double y, double *__restrict dist,
                 double *__restrict start, double *__restrict span, double *__restrict is_long)
{
  for (int i = 0; i < n; ++i)
  {
    const double rx = x - ax[i], ry = y - ay[i];
    const double d = ux[i] * ry - uy[i] * rx;
    const double sa = -(rx * ux[i] + ry * uy[i]);
    const double pa = std::atan2(sa, d);
    const double pb = std::atan2(sa + len[i], d);
    const double h = pb - pa;
    const bool lg = !(h < 0.25 && std::max(std::abs(pa), std::abs(pb)) < 1.2);
    dist[i] = d;
    start[i] = pa;
    span[i] = h;
    is_long[i] = lg ? 1.0 : 0.0;
  }
}

void add_node(int n, const double *__restrict start, const double *__restrict span, double node,
              double weight, double ts, double *__restrict ang)
{
  for (int i = 0; i < n; ++i)
    ang[i] += weight * std::pow(std::cos(start[i] + span[i] * node), ts);
}

double finish(int n, const double *__restrict dist, const double *__restrict span,
              const double *__restrict is_long, const double *__restrict ang, double ts,
              double &min_d)
{
  double sum = 0.0, dmin = 1e300;
  for (int i = 0; i < n; ++i)
  {
    const double v = std::pow(dist[i], -ts) * ang[i] * span[i];
    sum += is_long[i] != 0.0 ? 0.0 : v;
    dmin = std::min(dmin, dist[i]);
  }
  min_d = dmin;
  return sum;
}

}  // namespace

double short_edge_sum(const EdgeSet &e, double x, double y, double s, const double *nodes,
                      const double *weights, double *is_long, double *scratch, double &min_d)
{
  const int n = e.count;
  double *dist = scratch, *start = scratch + n, *span = scratch + 2 * n, *ang = scratch + 3 * n;
  edge_angles(n, e.ax, e.ay, e.ux, e.uy, e.length, x, y, dist, start, span, is_long);
  std::fill(ang, ang + n, 0.0);
  for (int q = 0; q < 4; ++q)
    add_node(n, start, span, nodes[q], weights[q], 2.0 * s, ang);
  // distances are clamped so the power stays finite; the caller rejects min_d <= 0
  for (int i = 0; i < n; ++i)
    dist[i] = dist[i] > 0.0 ? dist[i] : 0.0;
  return finish(n, dist, span, is_long, ang, 2.0 * s, min_d);
}

}  // namespace fraclap::detail
