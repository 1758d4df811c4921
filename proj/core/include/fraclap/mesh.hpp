// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_MESH_HPP
#define FRACLAP_MESH_HPP

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fraclap/geometry.hpp"

namespace fraclap
{

using Triangle = std::array<int, 3>;

// How new boundary vertices are placed during refinement.
enum class BoundaryShape
{
  UnitCircle,  // boundary edge midpoints are pushed radially onto |x| = 1
  Polygon      // boundary edge midpoints stay on the straight edge
};

// Relation between two triangles of the same mesh, by number of shared vertices.
enum class PanelRelation
{
  Identical,
  SharedEdge,
  SharedVertex,
  Disjoint
};

const char *to_string(PanelRelation r);

//
// Conforming triangulation of a convex domain Omega_h. Immutable once built; triangles
// are stored counterclockwise (orientation is fixed at construction).
//
class TriangleMesh
{
public:
  TriangleMesh() = default;

  // Throws InvalidArgument on degenerate triangles, bad indices, or a non-manifold edge.
  TriangleMesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
               std::vector<bool> is_boundary, BoundaryShape shape = BoundaryShape::Polygon);

  const std::vector<Point> &vertices() const { return vertices_; }
  const std::vector<Triangle> &triangles() const { return triangles_; }
  const Point &vertex(int i) const { return vertices_[i]; }
  const Triangle &triangle(int t) const { return triangles_[t]; }
  std::array<Point, 3> corners(int t) const;

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  bool is_boundary(int v) const { return is_boundary_[v]; }
  const std::vector<bool> &boundary_flags() const { return is_boundary_; }

  // Contiguous interior-DOF index of vertex v, or -1 for boundary vertices.
  int interior_index(int v) const { return interior_index_[v]; }
  int num_interior() const { return static_cast<int>(interior_vertices_.size()); }
  // Vertex id of interior DOF k.
  const std::vector<int> &interior_vertices() const { return interior_vertices_; }

  double area(int t) const { return areas_[t]; }
  double diameter(int t) const { return diameters_[t]; }
  const std::vector<double> &areas() const { return areas_; }
  double total_area() const { return total_area_; }

  // h = max_T diam(T).
  double h() const { return h_; }
  double min_diameter() const { return min_diameter_; }

  // Edges of dOmega_h as (a, b) vertex pairs with the domain on the left, chained into
  // one counterclockwise loop.
  const std::vector<std::pair<int, int>> &boundary_edges() const { return boundary_edges_; }

  BoundaryShape shape() const { return shape_; }

private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<bool> is_boundary_;
  std::vector<int> interior_index_;
  std::vector<int> interior_vertices_;
  std::vector<double> areas_;
  std::vector<double> diameters_;
  std::vector<std::pair<int, int>> boundary_edges_;
  double total_area_ = 0.0;
  double h_ = 0.0;
  double min_diameter_ = 0.0;
  BoundaryShape shape_ = BoundaryShape::Polygon;
};

// Regular 6-triangle fan of the unit disk refined `levels` times.
TriangleMesh generate_disk_mesh(int levels);

// Fan triangulation of a convex polygon (corners counterclockwise) around its centroid,
// refined `levels` times without boundary projection.
TriangleMesh generate_polygon_mesh(std::span<const Point> corners, int levels);

// Red refinement: each triangle splits into four through its edge midpoints.
TriangleMesh uniform_refine(const TriangleMesh &m);

// Copy of m with every vertex multiplied by lambda > 0.
TriangleMesh scaled(const TriangleMesh &m, double lambda);

PanelRelation classify_pair(const TriangleMesh &m, int t1, int t2);

// Number of vertices shared by t1 and t2. On return the first `count` entries of
// local1/local2 hold the local positions of the shared vertices (matched pairwise); the
// remaining entries hold the unshared local positions in increasing order.
int shared_vertices(const TriangleMesh &m, int t1, int t2, std::array<int, 3> &local1,
                    std::array<int, 3> &local2);

// Plain-text mesh format: "nv nt", nv lines "x y b", nt lines "i j k" (0-based).
void write_mesh(std::ostream &os, const TriangleMesh &m);
TriangleMesh read_mesh(std::istream &is, BoundaryShape shape = BoundaryShape::Polygon);
void save_mesh(const std::string &path, const TriangleMesh &m);
TriangleMesh load_mesh(const std::string &path, BoundaryShape shape = BoundaryShape::Polygon);

}  // namespace fraclap

#endif  // FRACLAP_MESH_HPP
