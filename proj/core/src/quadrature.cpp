// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "fraclap/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "fraclap/error.hpp"

namespace fraclap
{

GaussRule gauss_legendre(int n)
{
  if (n < 1)
    throw InvalidArgument("gauss_legendre: need at least one point");

  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i)
  {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
        p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
        p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    r.nodes[i] = 0.5 * (1.0 - x);
    r.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    r.weights[i] = r.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1)
    r.nodes[n / 2] = 0.5;
  return r;
}

namespace
{

void add_orbit3(TriangleRule &rule, double a, double w)
{
  const double b = 1.0 - 2.0 * a;
  rule.push_back({{b, a, a}, w});
  rule.push_back({{a, b, a}, w});
  rule.push_back({{a, a, b}, w});
}

void add_orbit6(TriangleRule &rule, double a, double b, double w)
{
  const double c = 1.0 - a - b;
  for (const auto &l : {Barycentric{a, b, c}, Barycentric{a, c, b}, Barycentric{b, a, c},
                        Barycentric{b, c, a}, Barycentric{c, a, b}, Barycentric{c, b, a}})
    rule.push_back({l, w});
}

// Conical product of Gauss-Legendre rules through the collapsed map
// (u, v) -> (u, v (1 - u)); exact for total degree `order`.
TriangleRule collapsed_rule(int order)
{
  const int nu = (order + 3) / 2;  // integrand degree order + 1 in u
  const int nv = (order + 2) / 2;  // degree order in v
  const auto gu = gauss_legendre(nu);
  const auto gv = gauss_legendre(nv);
  TriangleRule rule;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j)
    {
      const double u = gu.nodes[i];
      const double y = gv.nodes[j] * (1.0 - u);
      // reference area 1/2 is folded into the normalization below
      rule.push_back({{1.0 - u - y, u, y}, 2.0 * gu.weights[i] * gv.weights[j] * (1.0 - u)});
    }
  return rule;
}

TriangleRule build_rule(int order)
{
  TriangleRule rule;
  switch (order)
  {
    case 1:
      rule.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1.0});
      break;
    case 2:
      add_orbit3(rule, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:
    case 4:
      // Degree-4 six point rule; the classical degree-3 rule has a negative weight.
      add_orbit3(rule, 0.445948490915965, 0.223381589678011);
      add_orbit3(rule, 0.091576213509771, 0.109951743655322);
      break;
    case 5:
      rule.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.225});
      add_orbit3(rule, 0.470142064105115, 0.132394152788506);
      add_orbit3(rule, 0.101286507323456, 0.125939180544827);
      break;
    case 6:
      add_orbit3(rule, 0.249286745170910, 0.116786275726379);
      add_orbit3(rule, 0.063089014491502, 0.050844906370207);
      add_orbit6(rule, 0.053145049844817, 0.310352451033784, 0.082851075618374);
      break;
    default:
      rule = collapsed_rule(order);
      break;
  }
  // Tabulated weights carry 15 digits; renormalize so they sum to one exactly in double.
  double sum = 0.0;
  for (const auto &q : rule)
    sum += q.weight;
  for (auto &q : rule)
    q.weight /= sum;
  return rule;
}

}  // namespace

const TriangleRule &reference_quadrature(int order)
{
  if (order < 1 || order > max_triangle_rule_order)
    throw InvalidArgument("reference_quadrature: unsupported order " + std::to_string(order) +
                          " (supported: 1.." + std::to_string(max_triangle_rule_order) + ")");
  static std::array<TriangleRule, max_triangle_rule_order + 1> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int k = 1; k <= max_triangle_rule_order; ++k)
      cache[k] = build_rule(k);
  });
  return cache[order];
}

}  // namespace fraclap
