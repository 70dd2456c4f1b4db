#include "sdcn/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdcn/errors.hpp"
#include "sdcn/rng.hpp"

namespace sdcn {

namespace {

constexpr std::size_t kMaxIterations = 300;

double sq_dist(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        const double diff = a[c] - b[c];
        s += diff * diff;
    }
    return s;
}

DenseMatrix seed_centers_pp(const DenseMatrix& x, std::size_t k, Rng& rng) {
    const std::size_t n = x.rows(), d = x.cols();
    DenseMatrix centers(k, d);
    std::size_t first = uniform_index(rng, n);
    std::copy_n(x.row(first), d, centers.row(0));

    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) dist[i] = sq_dist(x.row(i), centers.row(0), d);
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (double v : dist) total += v;
        std::size_t pick;
        if (total > 0.0) {
            double target = uniform_real(rng, 0.0, total);
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                target -= dist[i];
                if (target <= 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = uniform_index(rng, n);  // all points coincide with centers
        }
        std::copy_n(x.row(pick), d, centers.row(c));
        for (std::size_t i = 0; i < n; ++i)
            dist[i] = std::min(dist[i], sq_dist(x.row(i), centers.row(c), d));
    }
    return centers;
}

KmeansResult lloyd(const DenseMatrix& x, std::size_t k, Rng& rng) {
    const std::size_t n = x.rows(), d = x.cols();
    KmeansResult result;
    result.centers = seed_centers_pp(x, k, rng);
    result.labels.assign(n, 0);

    std::vector<int> prev(n, -1);
    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(x.row(i), result.centers.row(0), d);
            for (std::size_t c = 1; c < k; ++c) {
                const double dd = sq_dist(x.row(i), result.centers.row(c), d);
                if (dd < best_d) {
                    best_d = dd;
                    best = static_cast<int>(c);
                }
            }
            result.labels[i] = best;
        }
        if (result.labels == prev) break;
        prev = result.labels;

        DenseMatrix sums(k, d);
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = static_cast<std::size_t>(result.labels[i]);
            ++counts[c];
            for (std::size_t col = 0; col < d; ++col) sums(c, col) += x(i, col);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // Re-seed an emptied cluster to the point farthest from its
                // current center; lowest index wins ties.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t ci = static_cast<std::size_t>(result.labels[i]);
                    const double dd = sq_dist(x.row(i), result.centers.row(ci), d);
                    if (dd > far_d) {
                        far_d = dd;
                        far = i;
                    }
                }
                std::copy_n(x.row(far), d, result.centers.row(c));
            } else {
                for (std::size_t col = 0; col < d; ++col)
                    result.centers(c, col) = sums(c, col) / static_cast<double>(counts[c]);
            }
        }
    }

    result.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        result.inertia +=
            sq_dist(x.row(i), result.centers.row(static_cast<std::size_t>(result.labels[i])), d);
    return result;
}

}  // namespace

KmeansResult kmeans(const DenseMatrix& x, std::size_t k, std::size_t restarts,
                    std::uint64_t seed) {
    if (k < 1) throw ParameterError("kmeans: k must be >= 1");
    if (k > x.rows())
        throw ParameterError("kmeans: k=" + std::to_string(k) + " exceeds sample count " +
                             std::to_string(x.rows()));
    if (restarts < 1) throw ParameterError("kmeans: restarts must be >= 1");

    KmeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(mix_seed(seed, 0x4b3 + r));
        KmeansResult run = lloyd(x, k, rng);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return best;
}

}  // namespace sdcn
