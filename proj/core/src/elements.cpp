#include "signorini/elements.hpp"

#include <stdexcept>

namespace signorini {

const ReferenceElement& ReferenceElement::get(int degree) {
    static const ReferenceElement p1{1};
    static const ReferenceElement p2{2};
    if (degree == 1) return p1;
    if (degree == 2) return p2;
    throw std::invalid_argument("ReferenceElement: degree must be 1 or 2");
}

void ReferenceElement::values(const std::array<double, 3>& bary, std::span<double> out) const {
    const double l0 = bary[0], l1 = bary[1], l2 = bary[2];
    if (degree == 1) {
        out[0] = l0;
        out[1] = l1;
        out[2] = l2;
        return;
    }
    out[0] = l0 * (2.0 * l0 - 1.0);
    out[1] = l1 * (2.0 * l1 - 1.0);
    out[2] = l2 * (2.0 * l2 - 1.0);
    out[3] = 4.0 * l1 * l2;
    out[4] = 4.0 * l2 * l0;
    out[5] = 4.0 * l0 * l1;
}

void ReferenceElement::gradients(const std::array<double, 3>& bary, std::span<Point2> out) const {
    const double l0 = bary[0], l1 = bary[1], l2 = bary[2];
    if (degree == 1) {
        out[0] = {-1.0, -1.0};
        out[1] = {1.0, 0.0};
        out[2] = {0.0, 1.0};
        return;
    }
    out[0] = {1.0 - 4.0 * l0, 1.0 - 4.0 * l0};
    out[1] = {4.0 * l1 - 1.0, 0.0};
    out[2] = {0.0, 4.0 * l2 - 1.0};
    out[3] = {4.0 * l2, 4.0 * l1};
    out[4] = {-4.0 * l2, 4.0 * (l0 - l2)};
    out[5] = {4.0 * (l0 - l1), -4.0 * l1};
}

std::array<double, 3> ReferenceElement::hessian(int i) const {
    if (degree == 1) return {0.0, 0.0, 0.0};
    switch (i) {
        case 0: return {4.0, 4.0, 4.0};
        case 1: return {4.0, 0.0, 0.0};
        case 2: return {0.0, 0.0, 4.0};
        case 3: return {0.0, 4.0, 0.0};
        case 4: return {0.0, -4.0, -8.0};
        case 5: return {-8.0, -4.0, 0.0};
    }
    throw std::invalid_argument("ReferenceElement::hessian: bad index");
}

AffineMap::AffineMap(Point2 a, Point2 b, Point2 c) : origin(a) {
    j[0][0] = b.x - a.x;
    j[1][0] = b.y - a.y;
    j[0][1] = c.x - a.x;
    j[1][1] = c.y - a.y;
    det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    inv[0][0] = j[1][1] / det;
    inv[0][1] = -j[0][1] / det;
    inv[1][0] = -j[1][0] / det;
    inv[1][1] = j[0][0] / det;
}

Point2 AffineMap::to_physical(const std::array<double, 3>& bary) const {
    return {origin.x + j[0][0] * bary[1] + j[0][1] * bary[2],
            origin.y + j[1][0] * bary[1] + j[1][1] * bary[2]};
}

std::array<double, 3> AffineMap::to_barycentric(Point2 p) const {
    const double dx = p.x - origin.x, dy = p.y - origin.y;
    const double xi = inv[0][0] * dx + inv[0][1] * dy;
    const double eta = inv[1][0] * dx + inv[1][1] * dy;
    return {1.0 - xi - eta, xi, eta};
}

Point2 AffineMap::push_gradient(Point2 g) const {
    // J^{-T} g
    return {inv[0][0] * g.x + inv[1][0] * g.y, inv[0][1] * g.x + inv[1][1] * g.y};
}

double AffineMap::push_laplacian(const std::array<double, 3>& h) const {
    // trace(J^{-T} H J^{-1}) with H = [[h0, h1], [h1, h2]]
    const double a = inv[0][0], b = inv[0][1], c = inv[1][0], d = inv[1][1];
    // rows of J^{-1}: (a, b) and (c, d); columns of J^{-T}: same
    const double t00 = h[0] * a * a + 2.0 * h[1] * a * c + h[2] * c * c;
    const double t11 = h[0] * b * b + 2.0 * h[1] * b * d + h[2] * d * d;
    return t00 + t11;
}

}  // namespace signorini
