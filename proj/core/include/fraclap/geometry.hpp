// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_GEOMETRY_HPP
#define FRACLAP_GEOMETRY_HPP

#include <array>
#include <cmath>

namespace fraclap
{

struct Point
{
  double x = 0.0;
  double y = 0.0;

  constexpr Point &operator+=(const Point &o)
  {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Point &operator-=(const Point &o)
  {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Point &operator*=(double a)
  {
    x *= a;
    y *= a;
    return *this;
  }
};

constexpr Point operator+(Point a, const Point &b) { return a += b; }
constexpr Point operator-(Point a, const Point &b) { return a -= b; }
constexpr Point operator*(double s, Point a) { return a *= s; }
constexpr Point operator*(Point a, double s) { return a *= s; }
constexpr bool operator==(const Point &a, const Point &b) { return a.x == b.x && a.y == b.y; }

constexpr double dot(const Point &a, const Point &b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Point &a, const Point &b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(const Point &a) { return dot(a, a); }
inline double norm(const Point &a) { return std::hypot(a.x, a.y); }

// Signed area of the triangle (a, b, c); positive for counterclockwise ordering.
constexpr double signed_area(const Point &a, const Point &b, const Point &c)
{
  return 0.5 * cross(b - a, c - a);
}

// Barycentric coordinates are stored as (l0, l1, l2) with l0 + l1 + l2 = 1.
using Barycentric = std::array<double, 3>;

constexpr Point from_barycentric(const std::array<Point, 3> &v, const Barycentric &l)
{
  return {l[0] * v[0].x + l[1] * v[1].x + l[2] * v[2].x,
          l[0] * v[0].y + l[1] * v[1].y + l[2] * v[2].y};
}

}  // namespace fraclap

#endif  // FRACLAP_GEOMETRY_HPP
