// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <memory>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fraclap/error.hpp"
#include "fraclap/field_io.hpp"

using namespace fraclap;

TEST_CASE("nodal field round trip")
{
  auto mesh = std::make_shared<const TriangleMesh>(generate_disk_mesh(2));
  NodalField u;
  u.mesh = mesh;
  u.coefficients = Vector::LinSpaced(mesh->num_interior(), -1.0 / 3.0, 2.0 / 7.0);
  std::stringstream ss;
  write_nodal_field(ss, u);
  int lines = 0;
  for (std::string l; std::getline(ss, l);)
    ++lines;
  // one line per vertex, boundary vertices carry zero
  CHECK(lines == mesh->num_vertices());
  ss.clear();
  ss.seekg(0);
  const NodalField r = read_nodal_field(ss, mesh);
  CHECK(r.coefficients == u.coefficients);

  std::istringstream bad("0 1.0\nx y\n");
  CHECK_THROWS_AS(read_nodal_field(bad, mesh), IoError);
  std::istringstream range("100000 1.0\n");
  CHECK_THROWS_AS(read_nodal_field(range, mesh), IoError);
}

TEST_CASE("control field format")
{
  const auto mesh = generate_disk_mesh(0);
  ControlField z = ControlField::constant(mesh, -0.1);
  z.values[2] = -0.8;
  std::ostringstream os;
  write_control_field(os, z);
  CHECK(os.str() == "0 -0.10000000000000001\n1 -0.10000000000000001\n2 -0.80000000000000004\n"
                    "3 -0.10000000000000001\n4 -0.10000000000000001\n5 -0.10000000000000001\n");
}

TEST_CASE("saving to an unwritable path fails")
{
  const auto mesh = generate_disk_mesh(0);
  CHECK_THROWS_AS(save_control_field("/nonexistent/dir/z.txt", ControlField::constant(mesh, 0.0)),
                  IoError);
  const std::string path = "fraclap_field_io_test.txt";
  save_control_field(path, ControlField::constant(mesh, 0.5));
  CHECK(std::remove(path.c_str()) == 0);
}
