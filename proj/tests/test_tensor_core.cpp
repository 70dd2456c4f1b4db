#include <doctest.h>

#include <array>
#include <cmath>

#include "sdcn/errors.hpp"
#include "sdcn/grad_check.hpp"
#include "sdcn/graph.hpp"
#include "sdcn/matrix.hpp"
#include "sdcn/rng.hpp"
#include "sdcn/tape.hpp"

using namespace sdcn;

namespace {

DenseMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double scale = 1.0) {
    DenseMatrix m(r, c);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = normal_real(rng, 0.0, scale);
    return m;
}

SparseGraph random_graph(std::size_t n, double p, Rng& rng) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (uniform_real(rng, 0.0, 1.0) < p) edges.push_back({i, j, 1.0});
    return SparseGraph(n, std::move(edges));
}

}  // namespace

TEST_SUITE("tensor-core") {

TEST_CASE("matmul identity and zero cases") {
    const DenseMatrix m = DenseMatrix::from_rows({{1, 2}, {3, 4}});
    CHECK(max_abs_diff(matmul(DenseMatrix::identity(2), m), m) == 0.0);
    const DenseMatrix zero(2, 2);
    CHECK(max_abs_diff(matmul(zero, m), zero) == 0.0);
}

TEST_CASE("matmul matches the hand-expanded 2x2 product") {
    const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {3, 4}});
    const DenseMatrix b = DenseMatrix::from_rows({{5, 6}, {7, 8}});
    const DenseMatrix expected = DenseMatrix::from_rows({{19, 22}, {43, 50}});
    CHECK(max_abs_diff(matmul(a, b), expected) == doctest::Approx(0.0).epsilon(0));
}

TEST_CASE("matmul rejects shape mismatch") {
    CHECK_THROWS_AS(matmul(DenseMatrix(2, 3), DenseMatrix(2, 3)), DimensionError);
}

TEST_CASE("matmul is associative on random 8x8 matrices") {
    Rng rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const DenseMatrix a = random_matrix(8, 8, rng);
        const DenseMatrix b = random_matrix(8, 8, rng);
        const DenseMatrix c = random_matrix(8, 8, rng);
        CHECK(max_abs_diff(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-9);
    }
}

TEST_CASE("adjoint helpers agree with explicit transposes") {
    Rng rng(7);
    const DenseMatrix a = random_matrix(4, 6, rng);
    const DenseMatrix b = random_matrix(4, 3, rng);
    CHECK(max_abs_diff(matmul_tn(a, b), matmul(transpose(a), b)) < 1e-12);
    const DenseMatrix c = random_matrix(5, 6, rng);
    CHECK(max_abs_diff(matmul_nt(a, c), matmul(a, transpose(c))) < 1e-12);
}

TEST_CASE("sparse-dense product equals the dense oracle") {
    Rng rng(11);
    SUBCASE("identity graph passes input through") {
        const SparseGraph g(3, {});  // only self-loops survive normalization
        const DenseMatrix d = random_matrix(3, 4, rng);
        CHECK(max_abs_diff(spmm(g.normalized(), d), d) < 1e-12);
    }
    SUBCASE("random graphs up to 32 nodes") {
        for (std::size_t n : {5, 10, 17, 32}) {
            const SparseGraph g = random_graph(n, 0.3, rng);
            const DenseMatrix d = random_matrix(n, 6, rng);
            const DenseMatrix dense = matmul(densify(g.normalized()), d);
            CHECK(max_abs_diff(spmm(g.normalized(), d), dense) < 1e-12);
        }
    }
    SUBCASE("shape mismatch is rejected") {
        const SparseGraph g(3, {});
        CHECK_THROWS_AS(spmm(g.normalized(), DenseMatrix(4, 2)), DimensionError);
    }
}

TEST_CASE("relu clamps negatives") {
    const DenseMatrix m = DenseMatrix::from_rows({{-1, 0, 2}});
    const DenseMatrix expected = DenseMatrix::from_rows({{0, 0, 2}});
    CHECK(max_abs_diff(relu(m), expected) == 0.0);
}

TEST_CASE("row_softmax known values") {
    const DenseMatrix uniform = row_softmax(DenseMatrix::from_rows({{0, 0, 0}}));
    for (int j = 0; j < 3; ++j) CHECK(uniform(0, j) == doctest::Approx(1.0 / 3).epsilon(1e-12));

    const DenseMatrix skew = row_softmax(DenseMatrix::from_rows({{std::log(2.0), 0.0}}));
    CHECK(skew(0, 0) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(skew(0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("row_softmax rows sum to one") {
    Rng rng(3);
    const DenseMatrix y = row_softmax(random_matrix(10, 7, rng, 5.0));
    for (std::size_t i = 0; i < y.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < y.cols(); ++j) {
            CHECK(y(i, j) > 0.0);
            sum += y(i, j);
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("grad_check: quadratic is exact") {
    Rng rng(5);
    const DenseMatrix x = random_matrix(3, 4, rng);
    // f(x) = sum x^2 via the MSE primitive against zero: (1/2N)||x||^2 scaled.
    const auto build = [](GradTape& tape, const std::vector<GradTape::Var>& params) {
        static const DenseMatrix zero(3, 4);
        return tape.mse_half_mean(&zero, params[0]);
    };
    CHECK(grad_check(build, {x}, 1e-5) < 1e-6);
}

TEST_CASE("grad_check rejects out-of-range step") {
    const auto build = [](GradTape& tape, const std::vector<GradTape::Var>& params) {
        static const DenseMatrix zero(1, 1);
        return tape.mse_half_mean(&zero, params[0]);
    };
    CHECK_THROWS_AS(grad_check(build, {DenseMatrix(1, 1, 1.0)}, 1e-3), ParameterError);
}

TEST_CASE("tape adjoints match finite differences per primitive") {
    Rng rng(17);
    const SparseGraph g = random_graph(6, 0.5, rng);
    const DenseMatrix h_fixed = random_matrix(6, 4, rng);

    SUBCASE("matmul + bias + relu chain") {
        const auto build = [&](GradTape& tape, const std::vector<GradTape::Var>& p) {
            static const DenseMatrix target = []() {
                Rng r(99);
                return random_matrix(6, 3, r);
            }();
            const GradTape::Var y =
                tape.relu(tape.add_row_bias(tape.matmul(p[0], p[1]), p[2]));
            return tape.mse_half_mean(&target, y);
        };
        const std::vector<DenseMatrix> params{random_matrix(6, 4, rng),
                                              random_matrix(4, 3, rng),
                                              random_matrix(1, 3, rng)};
        CHECK(grad_check(build, params, 1e-5) < 1e-6);
    }

    SUBCASE("graph propagation") {
        const auto build = [&](GradTape& tape, const std::vector<GradTape::Var>& p) {
            static const DenseMatrix target = []() {
                Rng r(98);
                return random_matrix(6, 4, r);
            }();
            return tape.mse_half_mean(&target, tape.spmm(&g.normalized(), p[0]));
        };
        CHECK(grad_check(build, {random_matrix(6, 4, rng)}, 1e-5) < 1e-6);
    }

    SUBCASE("softmax + KL") {
        static DenseMatrix target;
        {
            DenseMatrix raw(5, 3, 0.2);
            Rng r(97);
            for (std::size_t i = 0; i < raw.size(); ++i) raw.data()[i] += uniform_real(r, 0, 1);
            target = row_normalize(raw);
        }
        const auto build = [&](GradTape& tape, const std::vector<GradTape::Var>& p) {
            return tape.kl_const_target(&target, tape.row_softmax(p[0]));
        };
        CHECK(grad_check(build, {random_matrix(5, 3, rng)}, 1e-5) < 1e-6);
    }

    SUBCASE("student-t kernel + row normalization") {
        static DenseMatrix target;
        {
            DenseMatrix raw(6, 3, 0.2);
            Rng r(96);
            for (std::size_t i = 0; i < raw.size(); ++i) raw.data()[i] += uniform_real(r, 0, 1);
            target = row_normalize(raw);
        }
        const auto build = [&](GradTape& tape, const std::vector<GradTape::Var>& p) {
            const GradTape::Var q = tape.row_normalize(tape.student_t_kernel(p[0], p[1], 1.0));
            return tape.kl_const_target(&target, q);
        };
        const std::vector<DenseMatrix> params{h_fixed, random_matrix(3, 4, rng)};
        CHECK(grad_check(build, params, 1e-5) < 1e-6);
    }

    SUBCASE("delivery mix") {
        const auto build = [&](GradTape& tape, const std::vector<GradTape::Var>& p) {
            static const DenseMatrix target = []() {
                Rng r(95);
                return random_matrix(6, 4, r);
            }();
            return tape.mse_half_mean(&target, tape.axpby(0.5, p[0], 0.5, p[1]));
        };
        const std::vector<DenseMatrix> params{random_matrix(6, 4, rng),
                                              random_matrix(6, 4, rng)};
        CHECK(grad_check(build, params, 1e-5) < 1e-6);
    }
}

TEST_CASE("backward requires a scalar root and runs once") {
    GradTape tape;
    const GradTape::Var leaf = tape.leaf(DenseMatrix(2, 2, 1.0));
    CHECK_THROWS_AS(tape.backward(leaf), DimensionError);
}

TEST_CASE("non-finite loss is rejected") {
    GradTape tape;
    const GradTape::Var leaf = tape.leaf(DenseMatrix(1, 1, std::nan("")));
    CHECK_THROWS_AS(tape.backward(leaf), NumericError);
}

}  // TEST_SUITE
