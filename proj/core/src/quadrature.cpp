#include "signorini/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace signorini {

namespace {

/// Golub-Welsch: nodes/weights of the n-point Gauss rule for the weight
/// function with the given three-term recurrence (alpha_k, beta_k) and
/// zeroth moment mu0, on the recurrence's native interval.
void golub_welsch(const std::vector<double>& alpha, const std::vector<double>& beta,
                  double mu0, std::vector<double>& nodes, std::vector<double>& weights) {
    const int n = static_cast<int>(alpha.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = alpha[i];
        if (i + 1 < n) {
            J(i, i + 1) = beta[i + 1];
            J(i + 1, i) = beta[i + 1];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = es.eigenvalues()[i];
        const double q0 = es.eigenvectors()(0, i);
        weights[i] = mu0 * q0 * q0;
    }
}

/// Gauss-Legendre on [-1,1], mapped to [0,1].
EdgeRule make_gauss_legendre(int npoints) {
    std::vector<double> alpha(npoints, 0.0), beta(npoints, 0.0);
    for (int k = 1; k < npoints; ++k) beta[k] = k / std::sqrt(4.0 * k * k - 1.0);
    std::vector<double> x, w;
    golub_welsch(alpha, beta, 2.0, x, w);
    EdgeRule r;
    r.degree = 2 * npoints - 1;
    for (int i = 0; i < npoints; ++i) r.nodes.push_back({0.5 * (x[i] + 1.0), 0.5 * w[i]});
    return r;
}

/// Gauss-Jacobi with weight (1-x) on [-1,1], mapped to [0,1].
EdgeRule make_gauss_jacobi10(int npoints) {
    const double a = 1.0, b = 0.0;
    std::vector<double> alpha(npoints), beta(npoints, 0.0);
    for (int k = 0; k < npoints; ++k) {
        const double s = 2.0 * k + a + b;
        alpha[k] = (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < npoints; ++k) {
        const double s = 2.0 * k + a + b;
        beta[k] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) /
                            (s * s * (s + 1.0) * (s - 1.0)));
    }
    std::vector<double> x, w;
    golub_welsch(alpha, beta, 2.0, x, w);  // mu0 = int_{-1}^{1} (1-x) dx = 2
    EdgeRule r;
    r.degree = 2 * npoints - 1;
    // Map to [0,1]; the (1-x) factor carries a Jacobian of 1/2 on top of dx.
    for (int i = 0; i < npoints; ++i) r.nodes.push_back({0.5 * (x[i] + 1.0), 0.25 * w[i]});
    return r;
}

TriangleRule make_tabulated(int degree) {
    TriangleRule r;
    auto orbit1 = [&](double w) { r.nodes.push_back({{1.0 / 3, 1.0 / 3, 1.0 / 3}, w / 2}); };
    auto orbit3 = [&](double a, double w) {
        const double b = 1.0 - 2.0 * a;
        r.nodes.push_back({{b, a, a}, w / 2});
        r.nodes.push_back({{a, b, a}, w / 2});
        r.nodes.push_back({{a, a, b}, w / 2});
    };
    switch (degree) {
        case 0:
        case 1:
            r.degree = 1;
            orbit1(1.0);
            break;
        case 2:
            r.degree = 2;
            orbit3(1.0 / 6.0, 1.0 / 3.0);
            break;
        case 3:
        case 4:
            r.degree = 4;
            orbit3(0.445948490915965, 0.223381589678011);
            orbit3(0.091576213509771, 0.109951743655322);
            break;
        case 5:
            r.degree = 5;
            orbit1(0.225);
            orbit3(0.470142064105115, 0.132394152788506);
            orbit3(0.101286507323456, 0.125939180544827);
            break;
        default:
            throw std::invalid_argument("no tabulated triangle rule for this degree");
    }
    return r;
}

/// Conical product rule: Gauss-Jacobi(1,0) in the collapsed direction times
/// Gauss-Legendre across, exact for total degree 2n-1 with n points each way.
TriangleRule make_conical(int degree) {
    const int n = (degree + 2) / 2;  // ceil((degree+1)/2)
    const EdgeRule gj = make_gauss_jacobi10(n);
    const EdgeRule gl = make_gauss_legendre(n);
    TriangleRule r;
    r.degree = 2 * n - 1;
    for (const auto& nu : gj.nodes) {
        for (const auto& nv : gl.nodes) {
            const double x = nu.t;
            const double y = nv.t * (1.0 - nu.t);
            // gj weight already contains the (1-u) Jacobian factor
            r.nodes.push_back({{1.0 - x - y, x, y}, nu.weight * nv.weight});
        }
    }
    return r;
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
    if (degree < 0) throw std::invalid_argument("triangle_rule: negative degree");
    static std::map<int, TriangleRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(degree);
    if (it == cache.end()) {
        TriangleRule r = degree <= 5 ? make_tabulated(degree) : make_conical(degree);
        it = cache.emplace(degree, std::move(r)).first;
    }
    return it->second;
}

const EdgeRule& edge_rule(int degree) {
    if (degree < 0) throw std::invalid_argument("edge_rule: negative degree");
    static std::map<int, EdgeRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(degree);
    if (it == cache.end())
        it = cache.emplace(degree, make_gauss_legendre(degree / 2 + 1)).first;
    return it->second;
}

}  // namespace signorini
