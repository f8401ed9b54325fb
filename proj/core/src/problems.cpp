#include "signorini/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "signorini/expression.hpp"
#include "signorini/mesh_io.hpp"

namespace signorini {

using std::numbers::pi;

Problem make_signorini_problem(int n) {
    Problem p{"signorini-paper", build_unit_square(n),
              [](Point2 q) { return q.x * std::cos(2.0 * pi * q.y); },
              nullptr, nullptr};
    return p;
}

Problem make_manufactured_problem(int n) {
    Problem p{"manufactured-smooth", build_unit_square(n),
              [](Point2 q) {
                  // -laplace of (1 - cos(pi x))(2 + cos(pi y))
                  return -pi * pi *
                         (std::cos(pi * q.x) * (2.0 + std::cos(pi * q.y)) -
                          std::cos(pi * q.y) * (1.0 - std::cos(pi * q.x)));
              },
              [](Point2 q) { return (1.0 - std::cos(pi * q.x)) * (2.0 + std::cos(pi * q.y)); },
              [](Point2 q) {
                  return Point2{pi * std::sin(pi * q.x) * (2.0 + std::cos(pi * q.y)),
                                -pi * std::sin(pi * q.y) * (1.0 - std::cos(pi * q.x))};
              }};
    return p;
}

Problem make_zero_load_problem(int n) {
    Problem p{"zero-load", build_unit_square(n), [](Point2) { return 0.0; },
              [](Point2) { return 0.0; }, [](Point2) { return Point2{0.0, 0.0}; }};
    return p;
}

Problem make_problem(const ProblemSpec& spec) {
    if (!spec.mesh_file.empty()) {
        if (spec.load_expr.empty())
            throw std::invalid_argument("an external mesh needs a load expression");
        Problem p{"file:" + spec.mesh_file, read_mesh_file(spec.mesh_file),
                  compile_expression(spec.load_expr), nullptr, nullptr};
        return p;
    }
    if (spec.name == "signorini-paper") return make_signorini_problem(spec.initial_n);
    if (spec.name == "manufactured-smooth") return make_manufactured_problem(spec.initial_n);
    if (spec.name == "zero-load") return make_zero_load_problem(spec.initial_n);
    throw std::invalid_argument("unknown problem: " + spec.name);
}

}  // namespace signorini
