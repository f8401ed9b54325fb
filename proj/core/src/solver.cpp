#include "signorini/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <iostream>
#include <limits>
#include <sstream>

namespace signorini {

namespace {

Eigen::SparseMatrix<double> to_eigen(const SparseMatrix& A) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(A.nonzeros());
    const auto rp = A.row_ptr();
    const auto ci = A.col_idx();
    const auto vals = A.values();
    for (int r = 0; r < A.rows(); ++r)
        for (int i = rp[r]; i < rp[r + 1]; ++i) t.emplace_back(r, ci[i], vals[i]);
    Eigen::SparseMatrix<double> m(A.rows(), A.rows());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// Cached symmetric factorization with positive-definiteness diagnosis.
class SymmetricFactorization {
public:
    explicit SymmetricFactorization(const SparseMatrix& A) : A_(&A) {
        if (A.rows() == 0) return;
        eigen_ = to_eigen(A);
        ldlt_.compute(eigen_);
        if (ldlt_.info() != Eigen::Success)
            throw SolveError("linear solve: factorization failed (singular system?)");
        const auto& D = ldlt_.vectorD();
        const double dmax = D.cwiseAbs().maxCoeff();
        if (dmax <= 0.0 || !std::isfinite(dmax))
            throw SolveError("linear solve: singular system");
        if (D.minCoeff() <= -1e-12 * dmax)
            throw SolveError(
                "linear solve: system matrix is not positive definite; the stabilisation "
                "parameter may exceed the stable range");
    }

    std::vector<double> solve(std::span<const double> b, double tol) const {
        if (A_->rows() == 0) return {};
        Eigen::Map<const Eigen::VectorXd> rhs(b.data(), b.size());
        Eigen::VectorXd x = ldlt_.solve(rhs);
        // one round of iterative refinement before giving up on the tolerance
        const double bnorm = rhs.norm();
        for (int pass = 0; pass < 2; ++pass) {
            const Eigen::VectorXd res = rhs - eigen_ * x;
            if (res.norm() <= tol * std::max(bnorm, 1e-300)) break;
            x += ldlt_.solve(res);
        }
        const double res = (rhs - eigen_ * x).norm();
        if (!(res <= tol * std::max(bnorm, 1e-300)) && bnorm > 0.0)
            throw SolveError("linear solve: residual above tolerance (singular system?)");
        return {x.data(), x.data() + x.size()};
    }

private:
    const SparseMatrix* A_;
    Eigen::SparseMatrix<double> eigen_;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

std::uint64_t pattern_hash(const std::vector<std::uint8_t>& pattern) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint8_t b : pattern) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

void emit_warning(const NitscheConfig& cfg, const std::string& msg) {
    if (cfg.warn)
        cfg.warn(msg);
    else
        std::cerr << "signorini: warning: " << msg << "\n";
}

}  // namespace

int ContactState::active_count() const {
    int n = 0;
    for (const ContactPoint& p : points) n += p.active ? 1 : 0;
    return n;
}

std::vector<std::uint8_t> ContactState::activity() const {
    std::vector<std::uint8_t> a(points.size());
    for (size_t i = 0; i < points.size(); ++i) a[i] = points[i].active ? 1 : 0;
    return a;
}

ContactState compute_lambda(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                            double alpha, double hysteresis_tol, int edge_degree) {
    const auto layout = contact_quadrature(m, edge_degree);
    ContactState state;
    state.points.reserve(layout.size());
    for (const ContactQuadPoint& cp : layout) {
        const double hE = m.boundary_edge_length(cp.boundary_edge);
        const double trace = boundary_value(m, d, coeffs, cp.boundary_edge, cp.param);
        const double dn = edge_normal_derivative(m, d, coeffs, cp.boundary_edge, cp.param);
        const double unclipped = dn - trace / (alpha * hE);
        ContactPoint p;
        p.boundary_edge = cp.boundary_edge;
        p.position = cp.position;
        p.param = cp.param;
        p.weight = cp.weight;
        p.lambda = std::max(unclipped, 0.0);
        p.active = unclipped > hysteresis_tol;
        state.points.push_back(p);
    }
    return state;
}

std::vector<double> solve_linear(const SparseMatrix& A, std::span<const double> b, double tol) {
    if (static_cast<int>(b.size()) != A.rows())
        throw std::invalid_argument("solve_linear: dimension mismatch");
    return SymmetricFactorization(A).solve(b, tol);
}

std::pair<DiscreteSolution, ContactState> solve_nitsche(const Mesh& m, const DofMap& d,
                                                        const LoadFunction& f,
                                                        const NitscheConfig& cfg) {
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("solve_nitsche: alpha must be positive");
    if (cfg.max_iterations < 1)
        throw std::invalid_argument("solve_nitsche: max_iterations must be >= 1");
    const auto layout = contact_quadrature(m, cfg.edge_quad_degree);
    if (layout.empty()) throw std::invalid_argument("solve_nitsche: mesh has no contact edges");

    if (cfg.validate_alpha) {
        try {
            const double ci = estimate_inverse_constant(m, d, 1e-5, 500);
            if (!(cfg.alpha < ci)) {
                std::ostringstream os;
                os << "alpha = " << cfg.alpha << " is not below the estimated inverse constant "
                   << ci << "; the discrete system may be indefinite";
                emit_warning(cfg, os.str());
            }
        } catch (const SolveError&) {
            // estimation did not converge within the soft budget; skip the check
        }
    }

    const SparseMatrix K = assemble_stiffness(m, d);
    const std::vector<double> b = assemble_load(m, d, f, cfg.volume_quad_degree);

    auto system_for = [&](const std::vector<std::uint8_t>& activity) {
        const NitscheBlocks blocks =
            assemble_nitsche_blocks(m, d, cfg.alpha, activity, cfg.edge_quad_degree);
        return K.add_scaled(blocks.penalty, 1.0)
            .add_scaled(blocks.consistency, -1.0)
            .add_scaled(blocks.stabilisation, -1.0);
    };

    std::vector<std::uint8_t> activity(layout.size(), 1);
    SparseMatrix A = system_for(activity);

    struct HistoryEntry {
        std::uint64_t hash;
        double residual;
        std::vector<double> coeffs;
        ContactState state;
        int iteration;
    };
    std::deque<HistoryEntry> history;

    std::vector<double> coeffs;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        auto [Ar, br] = apply_dirichlet(A, b, d);
        const std::vector<double> x = solve_linear(Ar, br, cfg.linear_tol);
        coeffs = d.expand_free(x);

        ContactState state =
            compute_lambda(m, d, coeffs, cfg.alpha, cfg.hysteresis_tol, cfg.edge_quad_degree);
        const std::vector<std::uint8_t> next = state.activity();

        if (next == activity) {
            DiscreteSolution u{std::move(coeffs), d.degree(), cfg.alpha, it};
            return {std::move(u), std::move(state)};
        }

        // Nonlinear residual of this iterate: the system induced by its own
        // activity pattern applied to it, restricted to free dofs.
        SparseMatrix Anext = system_for(next);
        const std::vector<double> Au = Anext.multiply(coeffs);
        std::vector<double> res(d.num_free());
        for (int i = 0; i < d.num_free(); ++i) {
            const int full = d.full_index_of_free(i);
            res[i] = Au[full] - b[full];
        }
        const double rnorm = norm2(res);
        const std::uint64_t h = pattern_hash(next);

        for (const HistoryEntry& past : history) {
            if (past.hash != h) continue;
            // Cycle: fall back to the best iterate seen so far.
            const HistoryEntry* best = &history.front();
            for (const HistoryEntry& e : history)
                if (e.residual < best->residual) best = &e;
            std::ostringstream os;
            os << "active-set iteration entered a cycle after " << it
               << " solves; keeping the iterate with nonlinear residual " << best->residual;
            emit_warning(cfg, os.str());
            if (rnorm < best->residual) {
                DiscreteSolution u{std::move(coeffs), d.degree(), cfg.alpha, it};
                return {std::move(u), std::move(state)};
            }
            DiscreteSolution u{best->coeffs, d.degree(), cfg.alpha, it};
            return {std::move(u), best->state};
        }

        history.push_back({h, rnorm, coeffs, state, it});
        if (history.size() > 8) history.pop_front();

        activity = next;
        A = std::move(Anext);
    }

    const int active_now = [&] {
        int n = 0;
        for (auto a : activity) n += a;
        return n;
    }();
    std::ostringstream os;
    os << "active-set iteration did not converge within " << cfg.max_iterations
       << " solves; last two patterns had " << active_now << " and "
       << (history.empty() ? -1 : history.back().state.active_count()) << " active points of "
       << layout.size();
    throw SolveError(os.str());
}

double estimate_inverse_constant(const Mesh& m, const DofMap& d, double tol,
                                 int max_iterations) {
    const auto layout = contact_quadrature(m, kDefaultEdgeDegree);
    if (layout.empty())
        throw std::invalid_argument("estimate_inverse_constant: mesh has no contact edges");

    const SparseMatrix K = assemble_stiffness(m, d);
    // Edge form sum_E h_E (dn u, dn v)_E: the stabilisation block with all
    // points inactive and unit parameter.
    const std::vector<std::uint8_t> inactive(layout.size(), 0);
    const SparseMatrix B_full =
        assemble_nitsche_blocks(m, d, 1.0, inactive, kDefaultEdgeDegree).stabilisation;

    // Reduce to a complement of the kernel of the V-seminorm: Dirichlet dofs
    // when present, otherwise pin the first dof (both forms ignore constants,
    // so any complement yields the same supremum).
    std::vector<int> keep;
    if (d.num_free() < d.num_dofs()) {
        keep.reserve(d.num_free());
        for (int i = 0; i < d.num_free(); ++i) keep.push_back(d.full_index_of_free(i));
    } else {
        keep.reserve(d.num_dofs() - 1);
        for (int i = 1; i < d.num_dofs(); ++i) keep.push_back(i);
    }
    std::vector<int> where(d.num_dofs(), -1);
    for (size_t i = 0; i < keep.size(); ++i) where[keep[i]] = static_cast<int>(i);
    auto reduce = [&](const SparseMatrix& M) {
        std::vector<Triplet> t;
        const auto rp = M.row_ptr();
        const auto ci = M.col_idx();
        const auto vals = M.values();
        for (int r = 0; r < M.rows(); ++r) {
            if (where[r] < 0) continue;
            for (int i = rp[r]; i < rp[r + 1]; ++i)
                if (where[ci[i]] >= 0) t.push_back({where[r], where[ci[i]], vals[i]});
        }
        return SparseMatrix::from_triplets(static_cast<int>(keep.size()), std::move(t));
    };
    const SparseMatrix A = reduce(K);
    const SparseMatrix B = reduce(B_full);

    const SymmetricFactorization fact(A);
    const int n = A.rows();
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::fmod(0.6180339887498949 * (i + 1), 1.0) - 0.5;

    double rho_prev = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        const std::vector<double> bx = B.multiply(x);
        const double num = [&] {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += x[i] * bx[i];
            return s;
        }();
        const double den = A.bilinear(x, x);
        const double rho = num / den;
        if (it > 0 && std::abs(rho - rho_prev) <= tol * std::max(rho, 1e-300)) {
            if (rho <= 0.0)
                throw SolveError("estimate_inverse_constant: degenerate edge form");
            return 1.0 / rho;
        }
        rho_prev = rho;
        std::vector<double> y = fact.solve(bx, 1e-12);
        const double ynorm = std::sqrt(std::max(A.bilinear(y, y), 1e-300));
        for (int i = 0; i < n; ++i) x[i] = y[i] / ynorm;
    }
    throw SolveError("estimate_inverse_constant: power iteration did not converge");
}

DiscreteSolution solve_primal_oracle(const Mesh& m, const LoadFunction& f, double tol,
                                     int max_sweeps, int quad_degree) {
    const DofMap d(m, 1);
    const SparseMatrix K = assemble_stiffness(m, d);
    const std::vector<double> load = assemble_load(m, d, f, quad_degree);
    auto [A, b] = apply_dirichlet(K, load, d);

    // Nodal constraint set: free dofs on the closure of the contact boundary.
    std::vector<char> constrained(d.num_free(), 0);
    for (const BoundaryEdge& be : m.boundary_edges()) {
        if (be.tag != BoundaryClass::Contact) continue;
        for (int v : {be.a, be.b})
            if (d.free_index(v) >= 0) constrained[d.free_index(v)] = 1;
    }

    const int n = A.rows();
    std::vector<double> x(n, 0.0);
    const auto rp = A.row_ptr();
    const auto ci = A.col_idx();
    const auto vals = A.values();

    auto energy = [&] {
        double s = 0.5 * A.bilinear(x, x);
        for (int i = 0; i < n; ++i) s -= b[i] * x[i];
        return s;
    };

    double prev = energy();
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        for (int i = 0; i < n; ++i) {
            double diag = 0.0, off = 0.0;
            for (int k = rp[i]; k < rp[i + 1]; ++k) {
                if (ci[k] == i)
                    diag = vals[k];
                else
                    off += vals[k] * x[ci[k]];
            }
            double xi = (b[i] - off) / diag;
            if (constrained[i] && xi < 0.0) xi = 0.0;
            x[i] = xi;
        }
        const double now = energy();
        if (std::abs(prev - now) <= tol * std::max(1.0, std::abs(now))) {
            DiscreteSolution u{d.expand_free(x), 1, 0.0, sweep};
            return u;
        }
        prev = now;
    }
    throw SolveError("solve_primal_oracle: sweep cap exceeded before the energy settled");
}

std::vector<Point2> free_boundary_points(const ContactState& state) {
    if (state.points.size() < 2) return {};
    // Order points along the boundary by arclength direction of the first
    // edge; adequate for a contact part on one straight side.
    std::vector<const ContactPoint*> pts;
    pts.reserve(state.points.size());
    for (const ContactPoint& p : state.points) pts.push_back(&p);
    const Point2 a = pts.front()->position;
    Point2 dir{0.0, 0.0};
    double best = -1.0;
    for (const ContactPoint* p : pts) {
        const double len = distance(a, p->position);
        if (len > best) {
            best = len;
            dir = p->position - a;
        }
    }
    if (best <= 0.0) return {};
    dir = (1.0 / norm(dir)) * dir;
    std::sort(pts.begin(), pts.end(), [&](const ContactPoint* l, const ContactPoint* r) {
        return dot(l->position, dir) < dot(r->position, dir);
    });
    std::vector<Point2> out;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i]->active != pts[i + 1]->active)
            out.push_back(midpoint(pts[i]->position, pts[i + 1]->position));
    return out;
}

}  // namespace signorini
