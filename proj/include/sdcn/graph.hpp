#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "sdcn/matrix.hpp"

namespace sdcn {

// Compressed sparse row matrix; here always the symmetric normalized adjacency.
struct CsrMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> row_ptr;  // rows+1 entries
    std::vector<std::size_t> col_idx;
    std::vector<double> values;
};

// out = m * d (sparse-dense product). Throws DimensionError on mismatch.
DenseMatrix spmm(const CsrMatrix& m, const DenseMatrix& d);
// out = m^T * d; used by tape adjoints so symmetry is never assumed there.
DenseMatrix spmm_transposed(const CsrMatrix& m, const DenseMatrix& d);
DenseMatrix densify(const CsrMatrix& m);

struct Edge {
    std::size_t u = 0;  // u < v always
    std::size_t v = 0;
    double weight = 1.0;
};

// Undirected graph over n nodes. Raw adjacency stores no self-loops; the
// normalized form D^{-1/2} (A+I) D^{-1/2} is built once at construction and
// immutable afterwards.
class SparseGraph {
public:
    SparseGraph() = default;
    // Deduplicates, drops self-loops, sorts edges by (u, v).
    SparseGraph(std::size_t n, std::vector<Edge> edges);

    std::size_t node_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const CsrMatrix& normalized() const { return normalized_; }

    // Raw neighbors of i (no self-loop), sorted ascending.
    const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_[i]; }
    std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }
    bool is_connected() const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    CsrMatrix normalized_;
};

// The symmetric renormalized adjacency of g (self-loops added here only).
CsrMatrix normalize_adjacency(const SparseGraph& g);

// Parses "i j" pairs, 0-based, whitespace separated, '#' comments allowed.
// Duplicate edges collapse, self-loops are dropped. Out-of-range indices
// raise FormatError naming the line.
SparseGraph load_edge_list(const std::filesystem::path& path, std::size_t n);

void save_edge_list(const std::filesystem::path& path, const SparseGraph& g);

}  // namespace sdcn
