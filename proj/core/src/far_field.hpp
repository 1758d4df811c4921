// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

// Product-rule interactions of one triangle with a contiguous range of well-separated
// quadrature points. Compiled with relaxed floating-point semantics so the kernel loop
// vectorizes; results are deterministic for a fixed build.

#ifndef FRACLAP_SRC_FAR_FIELD_HPP
#define FRACLAP_SRC_FAR_FIELD_HPP

namespace fraclap::detail
{

struct FarPoints
{
  const double *x;
  const double *y;
  const double *w;  // quadrature weight times area
};

// For every source point p (coordinates xp, yp, weight wp, barycentrics lam[3p..3p+2]) and
// target j in [j0, j1) with kernel value k = mask[j] |x_p - y_j|^{-2-2s}:
//   row[p] = sum_j k w_j,  col[j] += k wp,  g_a[j] += k wp lam_a(p).
void far_interactions(int nq, const double *xp, const double *yp, const double *wp,
                      const double *lam, const FarPoints &pts, const double *mask, int j0,
                      int j1, double s, double *row, double *col, double *g0, double *g1,
                      double *g2);

// out[i] = r2[i]^ex
void kernel_powers(int n, const double *r2, double ex, double *out);

struct EdgeSet
{
  int count;
  const double *ax;
  const double *ay;
  const double *ux;
  const double *uy;
  const double *length;
};

// Sum over edges of d^{-2s} int_{phi_a}^{phi_b} cos^{2s}, seen from (x, y), by a four-point
// Gauss rule in the angle. Edges with angular span >= 0.25 or an endpoint angle >= 1.2 get
// is_long[e] = 1 and contribute nothing; the others get 0. min_d receives the smallest signed
// distance to an edge line. scratch holds 4 count doubles.
double short_edge_sum(const EdgeSet &e, double x, double y, double s, const double *nodes,
                      const double *weights, double *is_long, double *scratch, double &min_d);

}  // namespace fraclap::detail

#endif  // FRACLAP_SRC_FAR_FIELD_HPP
