#pragma once

#include <span>
#include <vector>

namespace signorini {

struct Triplet {
    int row;
    int col;
    double value;
};

/// Square sparse matrix in compressed row storage with sorted column indices.
/// Duplicate triplets are summed in their insertion order, so assembly results
/// do not depend on how element contributions were partitioned for computing.
class SparseMatrix {
public:
    SparseMatrix() = default;

    static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

    int rows() const { return n_; }
    int nonzeros() const { return static_cast<int>(values_.size()); }

    std::span<const int> row_ptr() const { return row_ptr_; }
    std::span<const int> col_idx() const { return col_idx_; }
    std::span<const double> values() const { return values_; }

    double coeff(int r, int c) const;

    std::vector<double> multiply(std::span<const double> x) const;
    /// x^T A y
    double bilinear(std::span<const double> x, std::span<const double> y) const;

    /// this + s * other (patterns may differ)
    SparseMatrix add_scaled(const SparseMatrix& other, double s) const;

    /// max |a_ij - a_ji| / max |a_ij|; 0 for the zero matrix.
    double symmetry_error() const;

private:
    int n_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_idx_;
    std::vector<double> values_;
};

}  // namespace signorini
