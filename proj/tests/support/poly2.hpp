#pragma once

#include <cmath>
#include <map>
#include <utility>

namespace signorini::testing {

/// Bivariate polynomial with exact integration over the reference triangle,
/// used as a quadrature-free oracle for local matrices.
class Poly2 {
public:
    Poly2() = default;
    explicit Poly2(double c) { coeffs_[{0, 0}] = c; }

    static Poly2 monomial(int a, int b, double c = 1.0) {
        Poly2 p;
        p.coeffs_[{a, b}] = c;
        return p;
    }
    static Poly2 x() { return monomial(1, 0); }
    static Poly2 y() { return monomial(0, 1); }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r = *this;
        for (const auto& [k, v] : o.coeffs_) r.coeffs_[k] += v;
        return r;
    }
    Poly2 operator-(const Poly2& o) const { return *this + (o * -1.0); }
    Poly2 operator*(double s) const {
        Poly2 r = *this;
        for (auto& [k, v] : r.coeffs_) v *= s;
        return r;
    }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (const auto& [ka, va] : coeffs_)
            for (const auto& [kb, vb] : o.coeffs_)
                r.coeffs_[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
        return r;
    }

    Poly2 dx() const {
        Poly2 r;
        for (const auto& [k, v] : coeffs_)
            if (k.first > 0) r.coeffs_[{k.first - 1, k.second}] += v * k.first;
        return r;
    }
    Poly2 dy() const {
        Poly2 r;
        for (const auto& [k, v] : coeffs_)
            if (k.second > 0) r.coeffs_[{k.first, k.second - 1}] += v * k.second;
        return r;
    }

    double eval(double x, double y) const {
        double s = 0.0;
        for (const auto& [k, v] : coeffs_) s += v * std::pow(x, k.first) * std::pow(y, k.second);
        return s;
    }

    /// Exact integral over the reference triangle via
    /// int x^a y^b = a! b! / (a+b+2)!.
    double integrate_reference_triangle() const {
        double s = 0.0;
        for (const auto& [k, v] : coeffs_) s += v * monomial_integral(k.first, k.second);
        return s;
    }

    static double monomial_integral(int a, int b) {
        double value = 1.0;
        // a! b! / (a+b+2)! computed stably as a product
        for (int i = 1; i <= a + b + 2; ++i) value /= i;
        for (int i = 1; i <= a; ++i) value *= i;
        for (int i = 1; i <= b; ++i) value *= i;
        return value;
    }

private:
    std::map<std::pair<int, int>, double> coeffs_;
};

/// Reference P1/P2 basis functions as polynomials in (x, y) = (l1, l2).
inline Poly2 reference_basis_poly(int degree, int i) {
    const Poly2 x = Poly2::x(), y = Poly2::y();
    const Poly2 l0 = Poly2(1.0) - x - y;
    const Poly2 l[3] = {l0, x, y};
    if (degree == 1) return l[i];
    if (i < 3) return l[i] * (l[i] * 2.0 - Poly2(1.0));
    return l[(i - 3 + 1) % 3] * l[(i - 3 + 2) % 3] * 4.0;
}

}  // namespace signorini::testing
