#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace sdcn {

// Row-major dense matrix of 64-bit reals. All kernels accumulate in double.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// C = A * B. Throws DimensionError on inner-dimension mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// C = A^T * B and C = A * B^T (adjoint helpers; avoid materialized transposes).
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& a);

// Elementwise max(0, x); subgradient at 0 is 0 on the tape.
DenseMatrix relu(const DenseMatrix& a);

// Numerically stable softmax over each row; rows sum to 1.
DenseMatrix row_softmax(const DenseMatrix& a);

// Each row divided by its row sum. Rows must have positive sums.
DenseMatrix row_normalize(const DenseMatrix& a);

// C[i][j] = a[i][j] + bias[0][j]; bias is 1 x cols.
DenseMatrix add_row_bias(const DenseMatrix& a, const DenseMatrix& bias);

// C = alpha*A + beta*B.
DenseMatrix axpby(double alpha, const DenseMatrix& a, double beta, const DenseMatrix& b);

double frobenius_norm_sq(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// Mean Euclidean distance over all unordered row pairs.
double mean_pairwise_row_distance(const DenseMatrix& a);

// Throws NumericError naming `context` if any entry is NaN/Inf.
void check_finite(const DenseMatrix& a, const std::string& context);

}  // namespace sdcn
