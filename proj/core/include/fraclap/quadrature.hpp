// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_QUADRATURE_HPP
#define FRACLAP_QUADRATURE_HPP

#include <vector>

#include "fraclap/geometry.hpp"

namespace fraclap
{

// One-dimensional rule on [0, 1].
struct GaussRule
{
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule mapped to [0, 1]; exact for degree 2n - 1.
GaussRule gauss_legendre(int n);

struct TriangleQuadPoint
{
  Barycentric bary;
  double weight;  // weights of a rule sum to 1
};

using TriangleRule = std::vector<TriangleQuadPoint>;

inline constexpr int max_triangle_rule_order = 10;

// Symmetric rule with positive weights, exact for polynomials of total degree <= order.
// Supported orders: 1..10. The integral over a triangle T is |T| * sum_q w_q f(x_q).
const TriangleRule &reference_quadrature(int order);

}  // namespace fraclap

#endif  // FRACLAP_QUADRATURE_HPP
