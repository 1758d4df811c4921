// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "fraclap/error.hpp"
#include "fraclap/mesh.hpp"

namespace fraclap
{

void write_mesh(std::ostream &os, const TriangleMesh &m)
{
  os << m.num_vertices() << ' ' << m.num_triangles() << '\n';
  os << std::setprecision(17);
  for (int v = 0; v < m.num_vertices(); ++v)
    os << m.vertex(v).x << ' ' << m.vertex(v).y << ' ' << (m.is_boundary(v) ? 1 : 0) << '\n';
  for (const auto &t : m.triangles())
    os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

TriangleMesh read_mesh(std::istream &is, BoundaryShape shape)
{
  int line_no = 0;
  std::string line;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(is, line))
    {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        return std::istringstream(line);
    }
    throw IoError("read_mesh: unexpected end of input after line " + std::to_string(line_no));
  };
  auto fail = [&](const char *what) {
    throw IoError(std::string("read_mesh: ") + what + " at line " + std::to_string(line_no));
  };

  long nv = -1, nt = -1;
  if (auto ss = next_line(); !(ss >> nv >> nt) || nv < 0 || nt < 0)
    fail("bad header");

  std::vector<Point> vertices(nv);
  std::vector<bool> boundary(nv);
  for (long v = 0; v < nv; ++v)
  {
    auto ss = next_line();
    int b = -1;
    if (!(ss >> vertices[v].x >> vertices[v].y >> b) || (b != 0 && b != 1))
      fail("bad vertex record");
    boundary[v] = b == 1;
  }
  std::vector<Triangle> triangles(nt);
  for (long t = 0; t < nt; ++t)
  {
    auto ss = next_line();
    if (!(ss >> triangles[t][0] >> triangles[t][1] >> triangles[t][2]))
      fail("bad triangle record");
  }
  try
  {
    return TriangleMesh(std::move(vertices), std::move(triangles), std::move(boundary), shape);
  }
  catch (const InvalidArgument &e)
  {
    throw IoError(std::string("read_mesh: ") + e.what());
  }
}

void save_mesh(const std::string &path, const TriangleMesh &m)
{
  std::ofstream os(path);
  if (!os)
    throw IoError("save_mesh: cannot open " + path);
  write_mesh(os, m);
  if (!os)
    throw IoError("save_mesh: write failed for " + path);
}

TriangleMesh load_mesh(const std::string &path, BoundaryShape shape)
{
  std::ifstream is(path);
  if (!is)
    throw IoError("load_mesh: cannot open " + path);
  return read_mesh(is, shape);
}

}  // namespace fraclap
