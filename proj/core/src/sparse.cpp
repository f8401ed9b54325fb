#include "signorini/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace signorini {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
            throw std::invalid_argument("SparseMatrix: triplet index out of range");
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.n_ = n;
    m.row_ptr_.assign(n + 1, 0);
    for (size_t i = 0; i < triplets.size();) {
        const int r = triplets[i].row, c = triplets[i].col;
        double sum = 0.0;
        while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
            sum += triplets[i++].value;
        m.col_idx_.push_back(c);
        m.values_.push_back(sum);
        ++m.row_ptr_[r + 1];
    }
    for (int r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

double SparseMatrix::coeff(int r, int c) const {
    for (int i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i)
        if (col_idx_[i] == c) return values_[i];
    return 0.0;
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
    std::vector<double> y(n_, 0.0);
    for (int r = 0; r < n_; ++r) {
        double s = 0.0;
        for (int i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i) s += values_[i] * x[col_idx_[i]];
        y[r] = s;
    }
    return y;
}

double SparseMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
    double total = 0.0;
    for (int r = 0; r < n_; ++r) {
        double s = 0.0;
        for (int i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i) s += values_[i] * y[col_idx_[i]];
        total += x[r] * s;
    }
    return total;
}

SparseMatrix SparseMatrix::add_scaled(const SparseMatrix& other, double s) const {
    if (other.n_ != n_) throw std::invalid_argument("SparseMatrix::add_scaled: size mismatch");
    std::vector<Triplet> t;
    t.reserve(values_.size() + other.values_.size());
    for (int r = 0; r < n_; ++r)
        for (int i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i)
            t.push_back({r, col_idx_[i], values_[i]});
    for (int r = 0; r < n_; ++r)
        for (int i = other.row_ptr_[r]; i < other.row_ptr_[r + 1]; ++i)
            t.push_back({r, other.col_idx_[i], s * other.values_[i]});
    return from_triplets(n_, std::move(t));
}

double SparseMatrix::symmetry_error() const {
    double max_abs = 0.0;
    for (double v : values_) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) return 0.0;
    double worst = 0.0;
    for (int r = 0; r < n_; ++r) {
        for (int i = row_ptr_[r]; i < row_ptr_[r + 1]; ++i) {
            const int c = col_idx_[i];
            worst = std::max(worst, std::abs(values_[i] - coeff(c, r)));
        }
    }
    return worst / max_abs;
}

}  // namespace signorini
