#pragma once

#include <array>
#include <vector>

namespace signorini {

/// Quadrature rule on the reference triangle (0,0), (1,0), (0,1).
/// Points are stored in barycentric coordinates; weights sum to the
/// reference measure 1/2 and are all positive.
struct TriangleRule {
    struct Node {
        std::array<double, 3> bary;
        double weight;
    };
    std::vector<Node> nodes;
    int degree = 0;  // exact for total polynomial degree <= degree
};

/// Gauss rule on the unit interval [0,1]; weights sum to 1.
struct EdgeRule {
    struct Node {
        double t;
        double weight;
    };
    std::vector<Node> nodes;
    int degree = 0;
};

/// Symmetric positive rule exact for total degree >= `degree`.
/// Degrees up to 5 use tabulated rules; higher degrees a conical product rule.
const TriangleRule& triangle_rule(int degree);

/// Gauss-Legendre rule exact for 1D polynomials of degree >= `degree`.
const EdgeRule& edge_rule(int degree);

inline constexpr int kDefaultTriangleDegree = 4;
inline constexpr int kDefaultEdgeDegree = 5;

}  // namespace signorini
