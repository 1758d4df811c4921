// Copyright the fraclap authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FRACLAP_FIELD_IO_HPP
#define FRACLAP_FIELD_IO_HPP

#include <iosfwd>
#include <memory>
#include <string>

#include "fraclap/control.hpp"
#include "fraclap/pde.hpp"

namespace fraclap
{

// "vertex_index value" per vertex of the mesh (boundary vertices carry 0), 17 digits.
void write_nodal_field(std::ostream &os, const NodalField &u);
// "triangle_index value" per triangle, 17 digits.
void write_control_field(std::ostream &os, const ControlField &z);

// File variants; throw IoError when the file cannot be written.
void save_nodal_field(const std::string &path, const NodalField &u);
void save_control_field(const std::string &path, const ControlField &z);

// Inverse of write_nodal_field for the given mesh; throws IoError on malformed input.
NodalField read_nodal_field(std::istream &is, std::shared_ptr<const TriangleMesh> mesh);

}  // namespace fraclap

#endif  // FRACLAP_FIELD_IO_HPP
