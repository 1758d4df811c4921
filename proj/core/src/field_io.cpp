// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include "fraclap/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "fraclap/error.hpp"

namespace fraclap
{

void write_nodal_field(std::ostream &os, const NodalField &u)
{
  const TriangleMesh &m = *u.mesh;
  os << std::setprecision(17);
  for (int v = 0; v < m.num_vertices(); ++v)
  {
    const int i = m.interior_index(v);
    os << v << ' ' << (i >= 0 ? u.coefficients[i] : 0.0) << '\n';
  }
}

void write_control_field(std::ostream &os, const ControlField &z)
{
  os << std::setprecision(17);
  for (Eigen::Index t = 0; t < z.values.size(); ++t)
    os << t << ' ' << z.values[t] << '\n';
}

namespace
{

template <class F>
void save(const std::string &path, F &&write)
{
  std::ofstream os(path);
  if (!os)
    throw IoError("cannot open " + path + " for writing");
  write(os);
  os.flush();
  if (!os)
    throw IoError("write to " + path + " failed");
}

}  // namespace

void save_nodal_field(const std::string &path, const NodalField &u)
{
  save(path, [&](std::ostream &os) { write_nodal_field(os, u); });
}

void save_control_field(const std::string &path, const ControlField &z)
{
  save(path, [&](std::ostream &os) { write_control_field(os, z); });
}

NodalField read_nodal_field(std::istream &is, std::shared_ptr<const TriangleMesh> mesh)
{
  NodalField u;
  u.mesh = mesh;
  u.coefficients = Vector::Zero(mesh->num_interior());
  std::string line;
  int lineno = 0, count = 0;
  while (std::getline(is, line))
  {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::istringstream ls(line);
    int v;
    double val;
    if (!(ls >> v >> val) || v < 0 || v >= mesh->num_vertices())
      throw IoError("field line " + std::to_string(lineno) + ": expected 'vertex_index value'");
    const int i = mesh->interior_index(v);
    if (i >= 0)
      u.coefficients[i] = val;
    ++count;
  }
  if (count != mesh->num_vertices())
    throw IoError("field has " + std::to_string(count) + " entries, mesh has " +
                  std::to_string(mesh->num_vertices()) + " vertices");
  return u;
}

}  // namespace fraclap
