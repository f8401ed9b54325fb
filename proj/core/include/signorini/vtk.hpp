#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "signorini/fields.hpp"
#include "signorini/solver.hpp"

namespace signorini {

/// Legacy-text unstructured-grid dump of the solution: point scalars "u" and
/// "lambda" (the multiplier on the contact boundary, zero elsewhere) and cell
/// scalars "contact" flagging cells with a sub-edge in the active contact
/// region. Degree-2 fields are written on one uniform refinement of the mesh,
/// whose vertices coincide with the quadratic nodes, since the legacy format
/// carries only linear cells.
void write_solution_vtk(std::ostream& out, const Mesh& m, const DofMap& d,
                        const DiscreteSolution& u, const ContactState& state);
void write_solution_vtk_file(const std::string& path, const Mesh& m, const DofMap& d,
                             const DiscreteSolution& u, const ContactState& state);

/// Minimal reader for the dumps produced above (round-trip checks).
struct VtkData {
    int num_points = 0;
    int num_cells = 0;
    std::map<std::string, std::vector<double>> point_data;
    std::map<std::string, std::vector<double>> cell_data;
};

VtkData read_vtk(std::istream& in);

}  // namespace signorini
