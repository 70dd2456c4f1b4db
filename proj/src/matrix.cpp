#include "sdcn/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdcn/errors.hpp"

namespace sdcn {

namespace {

using EigenRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const EigenRM>;
using MutMap = Eigen::Map<EigenRM>;

ConstMap map_of(const DenseMatrix& m) {
    return ConstMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                    static_cast<Eigen::Index>(m.cols()));
}

MutMap map_of(DenseMatrix& m) {
    return MutMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    DenseMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("from_rows: ragged row lengths");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()));
    DenseMatrix c(a.rows(), b.cols());
    map_of(c).noalias() = map_of(a) * map_of(b);
    return c;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows())
        throw DimensionError("matmul_tn: leading dimensions " + std::to_string(a.rows()) +
                             " vs " + std::to_string(b.rows()));
    DenseMatrix c(a.cols(), b.cols());
    map_of(c).noalias() = map_of(a).transpose() * map_of(b);
    return c;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols())
        throw DimensionError("matmul_nt: trailing dimensions " + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.cols()));
    DenseMatrix c(a.rows(), b.rows());
    map_of(c).noalias() = map_of(a) * map_of(b).transpose();
    return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

DenseMatrix relu(const DenseMatrix& a) {
    DenseMatrix c(a.rows(), a.cols());
    const double* in = a.data();
    double* out = c.data();
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
    return c;
}

DenseMatrix row_softmax(const DenseMatrix& a) {
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* in = a.row(i);
        double* out = c.row(i);
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < a.cols(); ++j) mx = std::max(mx, in[j]);
        double sum = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[j] = std::exp(in[j] - mx);
            sum += out[j];
        }
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] /= sum;
    }
    return c;
}

DenseMatrix row_normalize(const DenseMatrix& a) {
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j);
        if (!(sum > 0.0)) throw NumericError("row_normalize: nonpositive row sum");
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) / sum;
    }
    return c;
}

DenseMatrix add_row_bias(const DenseMatrix& a, const DenseMatrix& bias) {
    if (bias.rows() != 1 || bias.cols() != a.cols())
        throw DimensionError("add_row_bias: bias must be 1 x " + std::to_string(a.cols()));
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + bias(0, j);
    return c;
}

DenseMatrix axpby(double alpha, const DenseMatrix& a, double beta, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("axpby: shape mismatch");
    DenseMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i)
        c.data()[i] = alpha * a.data()[i] + beta * b.data()[i];
    return c;
}

double frobenius_norm_sq(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * a.data()[i];
    return s;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double mean_pairwise_row_distance(const DenseMatrix& a) {
    if (a.rows() < 2) return 0.0;
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.rows(); ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                const double diff = a(i, k) - a(j, k);
                d += diff * diff;
            }
            total += std::sqrt(d);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

void check_finite(const DenseMatrix& a, const std::string& context) {
    if (!a.all_finite()) throw NumericError(context + ": non-finite entries");
}

}  // namespace sdcn
