#pragma once

#include <functional>
#include <optional>
#include <string>

#include "signorini/assembly.hpp"
#include "signorini/mesh.hpp"

namespace signorini {

/// Selection of a built-in problem or an external mesh + load expression.
struct ProblemSpec {
    /// One of "signorini-paper", "manufactured-smooth", "zero-load", or empty
    /// when mesh_file is given.
    std::string name = "signorini-paper";
    std::string mesh_file;
    std::string load_expr;
    int initial_n = 4;  // subdivision of the built-in unit square
};

/// A concrete problem instance: initial mesh, load, and (when known) the
/// exact solution for error reporting.
struct Problem {
    std::string name;
    Mesh mesh;
    LoadFunction load;
    std::function<double(Point2)> exact_value;     // empty when unknown
    std::function<Point2(Point2)> exact_gradient;  // empty when unknown
};

Problem make_problem(const ProblemSpec& spec);

/// f(x,y) = x cos(2 pi y) on the unit square, Dirichlet left, contact right.
Problem make_signorini_problem(int n);
/// Smooth problem with exact solution u = (1 - cos(pi x)) (2 + cos(pi y)):
/// positive on the contact side with zero normal flux, so the constraint
/// never binds and the multiplier vanishes.
Problem make_manufactured_problem(int n);
Problem make_zero_load_problem(int n);

}  // namespace signorini
