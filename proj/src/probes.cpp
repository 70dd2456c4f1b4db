#include "sdcn/probes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdcn/errors.hpp"

namespace sdcn {

UnrolledPropagation probe_unrolled_propagation(const DenseMatrix& x,
                                               const std::vector<DenseMatrix>& hidden,
                                               const SparseGraph& g, double epsilon,
                                               std::size_t depth) {
    if (depth < 1) throw ParameterError("probe_unrolled_propagation: depth must be >= 1");
    if (hidden.size() < depth)
        throw ParameterError("probe_unrolled_propagation: need " + std::to_string(depth) +
                             " hidden matrices");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw ParameterError("probe_unrolled_propagation: epsilon must lie in [0, 1]");
    for (std::size_t l = 0; l < depth; ++l)
        if (!hidden[l].same_shape(x))
            throw ParameterError(
                "probe_unrolled_propagation: identity weights need equal-width stacks");
    if (x.rows() != g.node_count())
        throw DimensionError("probe_unrolled_propagation: row count vs node count");

    const CsrMatrix& a_hat = g.normalized();

    // Iterated side. Step s delivers hidden[depth - s]; that ordering is what
    // makes hidden[l-1] end up propagated exactly l times, matching the
    // closed form below.
    UnrolledPropagation out;
    DenseMatrix z = x;
    for (std::size_t s = 1; s <= depth; ++s) {
        z = spmm(a_hat, axpby(1.0 - epsilon, z, epsilon, hidden[depth - s]));
    }
    out.iterated = std::move(z);

    // Closed form: powers of the propagation applied term by term.
    DenseMatrix smoothing = x;
    for (std::size_t s = 0; s < depth; ++s) smoothing = spmm(a_hat, smoothing);
    const double keep = std::pow(1.0 - epsilon, static_cast<double>(depth));
    DenseMatrix closed(x.rows(), x.cols());
    for (std::size_t i = 0; i < closed.size(); ++i)
        closed.data()[i] = keep * smoothing.data()[i];
    for (std::size_t l = 1; l <= depth; ++l) {
        DenseMatrix term = hidden[l - 1];
        for (std::size_t s = 0; s < l; ++s) term = spmm(a_hat, term);
        const double w = epsilon * std::pow(1.0 - epsilon, static_cast<double>(l - 1));
        for (std::size_t i = 0; i < closed.size(); ++i)
            closed.data()[i] += w * term.data()[i];
    }
    out.closed_form = std::move(closed);

    out.max_abs_diff = max_abs_diff(out.iterated, out.closed_form);
    return out;
}

namespace {

double row_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

SecondOrderBound probe_second_order_bound(const DenseMatrix& h, const SparseGraph& g,
                                          std::size_t i, std::size_t j) {
    if (i == j) throw ParameterError("probe_second_order_bound: i and j must differ");
    if (i >= g.node_count() || j >= g.node_count())
        throw ParameterError("probe_second_order_bound: node index out of range");
    if (h.rows() != g.node_count())
        throw DimensionError("probe_second_order_bound: row count vs node count");

    const std::size_t width = h.cols();
    const DenseMatrix propagated = spmm(g.normalized(), h);

    SecondOrderBound out;
    {
        double d = 0.0;
        for (std::size_t c = 0; c < width; ++c) {
            const double diff = propagated(i, c) - propagated(j, c);
            d += diff * diff;
        }
        out.distance = std::sqrt(d);
    }

    // Degrees with the self-loop; neighborhoods are raw neighbors plus self.
    auto deg = [&](std::size_t v) { return static_cast<double>(g.degree(v) + 1); };
    auto tilde_neighbors = [&](std::size_t v) {
        std::vector<std::size_t> nbrs = g.neighbors(v);
        nbrs.insert(std::lower_bound(nbrs.begin(), nbrs.end(), v), v);
        return nbrs;
    };

    const std::vector<std::size_t> ni = tilde_neighbors(i);
    const std::vector<std::size_t> nj = tilde_neighbors(j);
    std::vector<std::size_t> common;
    std::set_intersection(ni.begin(), ni.end(), nj.begin(), nj.end(),
                          std::back_inserter(common));
    std::erase_if(common, [&](std::size_t v) { return v == i || v == j; });

    auto scaled_sum = [&](const std::vector<std::size_t>& nodes) {
        std::vector<double> acc(width, 0.0);
        for (std::size_t v : nodes)
            for (std::size_t c = 0; c < width; ++c) acc[c] += h(v, c) / std::sqrt(deg(v));
        return acc;
    };

    std::vector<std::size_t> rest_i, rest_j;
    for (std::size_t v : ni)
        if (v != i && !std::binary_search(common.begin(), common.end(), v)) rest_i.push_back(v);
    for (std::size_t v : nj)
        if (v != j && !std::binary_search(common.begin(), common.end(), v)) rest_j.push_back(v);

    const double di = deg(i), dj = deg(j);
    {
        std::vector<double> self(width);
        for (std::size_t c = 0; c < width; ++c) self[c] = h(i, c) / di - h(j, c) / dj;
        out.term_self = row_norm(self);
    }
    {
        const std::vector<double> shared = scaled_sum(common);
        out.term_common =
            std::abs(std::sqrt(di) - std::sqrt(dj)) / (std::sqrt(di) * std::sqrt(dj)) *
            row_norm(shared);
    }
    {
        const std::vector<double> rest_sum_i = scaled_sum(rest_i);
        const std::vector<double> rest_sum_j = scaled_sum(rest_j);
        out.term_noncommon =
            row_norm(rest_sum_i) / std::sqrt(di) + row_norm(rest_sum_j) / std::sqrt(dj);
    }
    out.bound = out.term_self + out.term_common + out.term_noncommon;
    return out;
}

}  // namespace sdcn
