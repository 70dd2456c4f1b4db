#include "sdcn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdcn/errors.hpp"

namespace sdcn {

namespace {

void check_pair(const Partition& pred, const Partition& truth) {
    if (pred.size() != truth.size() || pred.empty())
        throw ParameterError("metrics: partitions must be nonempty and the same length");
    for (int v : pred)
        if (v < 0) throw ParameterError("metrics: negative label in prediction");
    for (int v : truth)
        if (v < 0) throw ParameterError("metrics: negative label in truth");
}

int label_span(const Partition& a, const Partition& b) {
    int m = 0;
    for (int v : a) m = std::max(m, v + 1);
    for (int v : b) m = std::max(m, v + 1);
    return m;
}

double entropy(const std::vector<long long>& counts, double n) {
    double h = 0.0;
    for (long long c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

long long choose2(long long n) { return n * (n - 1) / 2; }

}  // namespace

std::vector<std::vector<long long>> contingency_table(const Partition& pred,
                                                      const Partition& truth) {
    check_pair(pred, truth);
    const int k = label_span(pred, truth);
    std::vector<std::vector<long long>> table(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < pred.size(); ++i) ++table[pred[i]][truth[i]];
    return table;
}

std::vector<int> hungarian_max(const std::vector<std::vector<long long>>& table) {
    const int n = static_cast<int>(table.size());
    long long top = 0;
    for (const auto& row : table)
        for (long long v : row) top = std::max(top, v);

    // Classic potentials formulation on the minimization form (top - value).
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = 0;
            double delta = std::numeric_limits<double>::infinity();
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur =
                    static_cast<double>(top - table[i0 - 1][j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] != 0) assignment[p[j] - 1] = j - 1;
    return assignment;
}

std::vector<int> best_mapping(const Partition& pred, const Partition& truth) {
    return hungarian_max(contingency_table(pred, truth));
}

double accuracy(const Partition& pred, const Partition& truth) {
    const std::vector<int> mapping = best_mapping(pred, truth);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (mapping[pred[i]] == truth[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double nmi(const Partition& pred, const Partition& truth) {
    const auto table = contingency_table(pred, truth);
    const int k = static_cast<int>(table.size());
    const double n = static_cast<double>(pred.size());

    std::vector<long long> row_sum(k, 0), col_sum(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            row_sum[i] += table[i][j];
            col_sum[j] += table[i][j];
        }
    const double hu = entropy(row_sum, n);
    const double hv = entropy(col_sum, n);
    if (hu == 0.0 || hv == 0.0) return 0.0;  // single-cluster partition

    double mi = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (table[i][j] == 0) continue;
            const double pij = static_cast<double>(table[i][j]) / n;
            mi += pij * std::log(n * static_cast<double>(table[i][j]) /
                                 (static_cast<double>(row_sum[i]) *
                                  static_cast<double>(col_sum[j])));
        }
    }
    return mi / ((hu + hv) / 2.0);
}

double ari(const Partition& pred, const Partition& truth) {
    const auto table = contingency_table(pred, truth);
    const int k = static_cast<int>(table.size());
    const long long n = static_cast<long long>(pred.size());

    std::vector<long long> row_sum(k, 0), col_sum(k, 0);
    long long index = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            index += choose2(table[i][j]);
            row_sum[i] += table[i][j];
            col_sum[j] += table[i][j];
        }
    long long sum_rows = 0, sum_cols = 0;
    for (long long v : row_sum) sum_rows += choose2(v);
    for (long long v : col_sum) sum_cols += choose2(v);
    const long long pairs = choose2(n);

    // Perfect pair agreement (including trivial partitions) scores 1.
    const long long together_pred = sum_rows, together_truth = sum_cols;
    if (index == together_pred && index == together_truth) return 1.0;

    const double expected =
        static_cast<double>(sum_rows) * static_cast<double>(sum_cols) /
        static_cast<double>(pairs);
    const double max_index = (static_cast<double>(sum_rows) + static_cast<double>(sum_cols)) / 2.0;
    const double denom = max_index - expected;
    if (denom == 0.0) return 0.0;
    return (static_cast<double>(index) - expected) / denom;
}

double macro_f1(const Partition& pred, const Partition& truth) {
    const std::vector<int> mapping = best_mapping(pred, truth);
    Partition mapped(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) mapped[i] = mapping[pred[i]];

    const int k = label_span(mapped, truth);
    std::vector<long long> tp(k, 0), fp(k, 0), fn(k, 0);
    std::vector<char> present(k, 0);
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        present[mapped[i]] = 1;
        present[truth[i]] = 1;
        if (mapped[i] == truth[i]) {
            ++tp[truth[i]];
        } else {
            ++fp[mapped[i]];
            ++fn[truth[i]];
        }
    }
    double total = 0.0;
    int classes = 0;
    for (int c = 0; c < k; ++c) {
        if (!present[c]) continue;
        ++classes;
        const double denom = 2.0 * static_cast<double>(tp[c]) + static_cast<double>(fp[c]) +
                             static_cast<double>(fn[c]);
        if (denom > 0.0) total += 2.0 * static_cast<double>(tp[c]) / denom;
    }
    return classes > 0 ? total / classes : 0.0;
}

MetricSet evaluate_partition(const Partition& pred, const Partition& truth) {
    return MetricSet{accuracy(pred, truth), nmi(pred, truth), ari(pred, truth),
                     macro_f1(pred, truth)};
}

}  // namespace sdcn
