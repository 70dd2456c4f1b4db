#include "sdcn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "sdcn/errors.hpp"

namespace sdcn {

DenseMatrix spmm(const CsrMatrix& m, const DenseMatrix& d) {
    if (m.cols != d.rows())
        throw DimensionError("spmm: " + std::to_string(m.cols) + " columns vs " +
                             std::to_string(d.rows()) + " rows");
    DenseMatrix out(m.rows, d.cols());
    for (std::size_t i = 0; i < m.rows; ++i) {
        double* out_row = out.row(i);
        for (std::size_t p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p) {
            const double w = m.values[p];
            const double* d_row = d.row(m.col_idx[p]);
            for (std::size_t j = 0; j < d.cols(); ++j) out_row[j] += w * d_row[j];
        }
    }
    return out;
}

DenseMatrix spmm_transposed(const CsrMatrix& m, const DenseMatrix& d) {
    if (m.rows != d.rows())
        throw DimensionError("spmm_transposed: " + std::to_string(m.rows) + " rows vs " +
                             std::to_string(d.rows()) + " rows");
    DenseMatrix out(m.cols, d.cols());
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* d_row = d.row(i);
        for (std::size_t p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p) {
            const double w = m.values[p];
            double* out_row = out.row(m.col_idx[p]);
            for (std::size_t j = 0; j < d.cols(); ++j) out_row[j] += w * d_row[j];
        }
    }
    return out;
}

DenseMatrix densify(const CsrMatrix& m) {
    DenseMatrix out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t p = m.row_ptr[i]; p < m.row_ptr[i + 1]; ++p)
            out(i, m.col_idx[p]) += m.values[p];
    return out;
}

SparseGraph::SparseGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    for (auto& e : edges) {
        if (e.u >= n || e.v >= n)
            throw ParameterError("SparseGraph: edge endpoint out of range");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                edges.end());
    edges_ = std::move(edges);

    adjacency_.assign(n_, {});
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    normalized_ = normalize_adjacency(*this);
}

bool SparseGraph::is_connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adjacency_[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n_;
}

CsrMatrix normalize_adjacency(const SparseGraph& g) {
    const std::size_t n = g.node_count();
    // Degrees include the self-loop, so every node has degree >= 1.
    std::vector<double> inv_sqrt_deg(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(i) + 1));

    CsrMatrix m;
    m.rows = n;
    m.cols = n;
    m.row_ptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) m.row_ptr[i + 1] = m.row_ptr[i] + g.degree(i) + 1;
    m.col_idx.resize(m.row_ptr[n]);
    m.values.resize(m.row_ptr[n]);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t p = m.row_ptr[i];
        bool self_written = false;
        for (std::size_t j : g.neighbors(i)) {
            if (!self_written && j > i) {
                m.col_idx[p] = i;
                m.values[p] = inv_sqrt_deg[i] * inv_sqrt_deg[i];
                self_written = true;
                ++p;
            }
            m.col_idx[p] = j;
            m.values[p] = inv_sqrt_deg[i] * inv_sqrt_deg[j];
            ++p;
        }
        if (!self_written) {
            m.col_idx[p] = i;
            m.values[p] = inv_sqrt_deg[i] * inv_sqrt_deg[i];
            ++p;
        }
    }
    return m;
}

SparseGraph load_edge_list(const std::filesystem::path& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw FormatError("load_edge_list: cannot open " + path.string());

    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        long long u = 0, v = 0;
        if (!(ss >> u)) continue;  // blank or comment-only line
        if (!(ss >> v))
            throw FormatError("load_edge_list: " + path.string() + ":" +
                              std::to_string(line_no) + ": expected two indices");
        long long trailing;
        if (ss >> trailing)
            throw FormatError("load_edge_list: " + path.string() + ":" +
                              std::to_string(line_no) + ": trailing tokens");
        if (u < 0 || v < 0 || u >= static_cast<long long>(n) || v >= static_cast<long long>(n))
            throw FormatError("load_edge_list: " + path.string() + ":" +
                              std::to_string(line_no) + ": index out of range [0, " +
                              std::to_string(n) + ")");
        edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), 1.0});
    }
    return SparseGraph(n, std::move(edges));
}

void save_edge_list(const std::filesystem::path& path, const SparseGraph& g) {
    std::ofstream out(path);
    if (!out) throw FormatError("save_edge_list: cannot open " + path.string());
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace sdcn
