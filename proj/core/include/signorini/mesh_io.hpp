#pragma once

#include <iosfwd>
#include <string>

#include "signorini/mesh.hpp"

namespace signorini {

/// Line-oriented text mesh format. Three header lines "vertices N",
/// "triangles M", "boundary B", followed by N lines "x y", M lines "i j k"
/// (zero-based, counter-clockwise) and B lines "i j tag" with tag one of
/// dirichlet/neumann/contact. '#' starts a comment; blank lines are skipped.
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);

void write_mesh(std::ostream& out, const Mesh& m);
void write_mesh_file(const std::string& path, const Mesh& m);

}  // namespace signorini
