// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "fraclap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "fraclap/error.hpp"

namespace fraclap
{

const char *to_string(PanelRelation r)
{
  switch (r)
  {
    case PanelRelation::Identical:
      return "identical";
    case PanelRelation::SharedEdge:
      return "shared-edge";
    case PanelRelation::SharedVertex:
      return "shared-vertex";
    case PanelRelation::Disjoint:
      return "disjoint";
  }
  return "unknown";
}

namespace
{

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

}  // namespace

TriangleMesh::TriangleMesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
                           std::vector<bool> is_boundary, BoundaryShape shape)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)),
      is_boundary_(std::move(is_boundary)), shape_(shape)
{
  const int nv = num_vertices();
  if (static_cast<int>(is_boundary_.size()) != nv)
    throw InvalidArgument("TriangleMesh: boundary flag count does not match vertex count");

  areas_.resize(triangles_.size());
  diameters_.resize(triangles_.size());
  std::map<EdgeKey, int> edge_count;
  std::map<EdgeKey, std::pair<int, int>> oriented;

  min_diameter_ = triangles_.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < triangles_.size(); ++t)
  {
    auto &tri = triangles_[t];
    for (int v : tri)
      if (v < 0 || v >= nv)
        throw InvalidArgument("TriangleMesh: vertex index out of range in triangle " +
                              std::to_string(t));
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw InvalidArgument("TriangleMesh: repeated vertex in triangle " + std::to_string(t));

    double a = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (a < 0.0)
    {
      std::swap(tri[1], tri[2]);
      a = -a;
    }
    if (!(a > 0.0))
      throw InvalidArgument("TriangleMesh: degenerate triangle " + std::to_string(t));
    areas_[t] = a;
    total_area_ += a;

    const auto c = corners(static_cast<int>(t));
    const double d = std::max({norm(c[1] - c[0]), norm(c[2] - c[1]), norm(c[0] - c[2])});
    diameters_[t] = d;
    h_ = std::max(h_, d);
    min_diameter_ = std::min(min_diameter_, d);

    for (int k = 0; k < 3; ++k)
    {
      const int a0 = tri[k], a1 = tri[(k + 1) % 3];
      const auto key = edge_key(a0, a1);
      if (++edge_count[key] > 2)
        throw InvalidArgument("TriangleMesh: edge shared by more than two triangles");
      oriented[key] = {a0, a1};
    }
  }

  interior_index_.assign(nv, -1);
  for (int v = 0; v < nv; ++v)
    if (!is_boundary_[v])
    {
      interior_index_[v] = static_cast<int>(interior_vertices_.size());
      interior_vertices_.push_back(v);
    }

  // Chain the edges with a single incident triangle into a loop.
  std::map<int, int> next;
  for (const auto &[key, count] : edge_count)
    if (count == 1)
      next[oriented[key].first] = oriented[key].second;
  if (!next.empty())
  {
    int start = next.begin()->first;
    int v = start;
    do
    {
      const auto it = next.find(v);
      if (it == next.end())
        throw InvalidArgument("TriangleMesh: boundary is not a closed loop");
      boundary_edges_.emplace_back(v, it->second);
      v = it->second;
    } while (v != start && boundary_edges_.size() <= next.size());
    if (boundary_edges_.size() != next.size())
      throw InvalidArgument("TriangleMesh: boundary has more than one component");
  }
}

std::array<Point, 3> TriangleMesh::corners(int t) const
{
  const auto &tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

TriangleMesh generate_disk_mesh(int levels)
{
  if (levels < 0)
    throw InvalidArgument("generate_disk_mesh: levels must be nonnegative");

  std::vector<Point> vertices{{0.0, 0.0}};
  std::vector<bool> boundary{false};
  std::vector<Triangle> triangles;
  for (int k = 0; k < 6; ++k)
  {
    const double theta = k * std::numbers::pi / 3.0;
    vertices.push_back({std::cos(theta), std::sin(theta)});
    boundary.push_back(true);
  }
  for (int k = 0; k < 6; ++k)
    triangles.push_back({0, 1 + k, 1 + (k + 1) % 6});

  TriangleMesh m(std::move(vertices), std::move(triangles), std::move(boundary),
                 BoundaryShape::UnitCircle);
  for (int l = 0; l < levels; ++l)
    m = uniform_refine(m);
  return m;
}

TriangleMesh generate_polygon_mesh(std::span<const Point> corners, int levels)
{
  if (corners.size() < 3)
    throw InvalidArgument("generate_polygon_mesh: need at least three corners");
  if (levels < 0)
    throw InvalidArgument("generate_polygon_mesh: levels must be nonnegative");

  Point centroid;
  for (const auto &c : corners)
    centroid += c;
  centroid *= 1.0 / static_cast<double>(corners.size());

  std::vector<Point> vertices{centroid};
  std::vector<bool> boundary{false};
  std::vector<Triangle> triangles;
  const int n = static_cast<int>(corners.size());
  for (int k = 0; k < n; ++k)
  {
    vertices.push_back(corners[k]);
    boundary.push_back(true);
    if (cross(corners[(k + 1) % n] - corners[k], corners[(k + 2) % n] - corners[(k + 1) % n]) <=
        0.0)
      throw InvalidArgument("generate_polygon_mesh: corners must form a convex CCW polygon");
  }
  for (int k = 0; k < n; ++k)
    triangles.push_back({0, 1 + k, 1 + (k + 1) % n});

  TriangleMesh m(std::move(vertices), std::move(triangles), std::move(boundary),
                 BoundaryShape::Polygon);
  for (int l = 0; l < levels; ++l)
    m = uniform_refine(m);
  return m;
}

TriangleMesh uniform_refine(const TriangleMesh &m)
{
  std::vector<Point> vertices = m.vertices();
  std::vector<bool> boundary = m.boundary_flags();

  std::map<EdgeKey, int> boundary_edge;
  for (const auto &[a, b] : m.boundary_edges())
    boundary_edge[edge_key(a, b)] = 1;

  std::map<EdgeKey, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = edge_key(a, b);
    if (const auto it = midpoint.find(key); it != midpoint.end())
      return it->second;
    Point p = 0.5 * (vertices[a] + vertices[b]);
    const bool on_boundary = boundary_edge.contains(key);
    if (on_boundary && m.shape() == BoundaryShape::UnitCircle)
      p *= 1.0 / norm(p);
    const int id = static_cast<int>(vertices.size());
    vertices.push_back(p);
    boundary.push_back(on_boundary);
    midpoint.emplace(key, id);
    return id;
  };

  std::vector<Triangle> triangles;
  triangles.reserve(4 * m.triangles().size());
  for (const auto &t : m.triangles())
  {
    const int m01 = mid(t[0], t[1]);
    const int m12 = mid(t[1], t[2]);
    const int m20 = mid(t[2], t[0]);
    triangles.push_back({t[0], m01, m20});
    triangles.push_back({m01, t[1], m12});
    triangles.push_back({m20, m12, t[2]});
    triangles.push_back({m01, m12, m20});
  }
  return TriangleMesh(std::move(vertices), std::move(triangles), std::move(boundary), m.shape());
}

TriangleMesh scaled(const TriangleMesh &m, double lambda)
{
  if (!(lambda > 0.0))
    throw InvalidArgument("scaled: lambda must be positive");
  std::vector<Point> vertices = m.vertices();
  for (auto &v : vertices)
    v *= lambda;
  const auto shape = lambda == 1.0 ? m.shape() : BoundaryShape::Polygon;
  return TriangleMesh(std::move(vertices), m.triangles(), m.boundary_flags(), shape);
}

int shared_vertices(const TriangleMesh &m, int t1, int t2, std::array<int, 3> &local1,
                    std::array<int, 3> &local2)
{
  const auto &a = m.triangle(t1);
  const auto &b = m.triangle(t2);
  int count = 0;
  std::array<bool, 3> used1{}, used2{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (a[i] == b[j])
      {
        local1[count] = i;
        local2[count] = j;
        used1[i] = used2[j] = true;
        ++count;
        break;
      }
  int k1 = count, k2 = count;
  for (int i = 0; i < 3; ++i)
  {
    if (!used1[i])
      local1[k1++] = i;
    if (!used2[i])
      local2[k2++] = i;
  }
  return count;
}

PanelRelation classify_pair(const TriangleMesh &m, int t1, int t2)
{
  if (t1 == t2)
    return PanelRelation::Identical;
  std::array<int, 3> l1{}, l2{};
  switch (shared_vertices(m, t1, t2, l1, l2))
  {
    case 2:
      return PanelRelation::SharedEdge;
    case 1:
      return PanelRelation::SharedVertex;
    case 0:
      return PanelRelation::Disjoint;
    default:
      // Three shared vertices on distinct ids would mean a duplicated triangle.
      throw InvalidArgument("classify_pair: duplicate triangles " + std::to_string(t1) + ", " +
                            std::to_string(t2));
  }
}

}  // namespace fraclap
