#include <doctest.h>

#include <cmath>
#include <random>

#include "gmfg/assumptions.hpp"
#include "gmfg/error.hpp"
#include "gmfg/graphon.hpp"
#include "gmfg/linalg.hpp"
#include "gmfg/mean_field.hpp"
#include "instances.hpp"
#include "oracles.hpp"

using namespace gmfg;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::config_error;
}

} // namespace

TEST_SUITE("graphon") {

TEST_CASE("jacobi on a 2x2 matrix") {
    const auto eig = jacobi_eigen(SquareMatrix::from_rows({{0.8, 0.2}, {0.2, 0.8}}));
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eig.values[1] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(eig.vectors[0][0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(eig.vectors[0][0] > 0.0);
    CHECK(eig.vectors[1][0] > 0.0);
}

TEST_CASE("jacobi reconstructs random symmetric matrices") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u}) {
        SquareMatrix a(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
        const auto eig = jacobi_eigen(a);
        for (std::size_t k = 1; k < n; ++k) CHECK(eig.values[k - 1] >= eig.values[k]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double rec = 0.0, dot = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    rec += eig.values[k] * eig.vectors[k][i] * eig.vectors[k][j];
                    dot += eig.vectors[i][k] * eig.vectors[j][k];
                }
                CHECK(std::abs(rec - a(i, j)) <= 1e-13);
                CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-13);
            }
    }
}

TEST_CASE("step graphon examples") {
    const auto c = Graphon::from_step_matrix(SquareMatrix(1, 0.5), 512);
    REQUIRE(c.rank() == 1);
    CHECK(c.eigenvalues()[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(c.eigenfunction(0, 17)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.is_step_function());

    const auto sbm = Graphon::from_step_matrix(SquareMatrix::from_rows({{0.8, 0.2}, {0.2, 0.8}}), 512);
    REQUIRE(sbm.rank() == 2);
    // lambda = eigenvalues of P / n
    CHECK(sbm.eigenvalues()[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(sbm.eigenvalues()[1] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(sbm.kernel(0, 0) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(sbm.kernel(0, 511) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(sbm.kernel_at(0.1, 0.9) == doctest::Approx(0.2).epsilon(1e-14));
    for (double d : sbm.degree_profile()) CHECK(d == doctest::Approx(0.5).epsilon(1e-14));

    // zero blocks are dropped below the rank threshold
    const auto rank1 = Graphon::from_step_matrix(SquareMatrix::from_rows({{0.4, 0.4}, {0.4, 0.4}}), 8);
    CHECK(rank1.rank() == 1);
}

TEST_CASE("graphon construction errors") {
    CHECK(code_of([] { Graphon::from_step_matrix(SquareMatrix::from_rows({{0.5, 0.2}, {0.3, 0.5}}), 8); }) ==
          ErrorCode::asymmetric_matrix);
    CHECK(code_of([] { Graphon::from_step_matrix(SquareMatrix::from_rows({{1.5}}), 8); }) ==
          ErrorCode::entry_out_of_range);
    CHECK(code_of([] { Graphon::from_step_matrix(SquareMatrix(2, 0.0), 8); }) == ErrorCode::rank_zero);
    CHECK(code_of([] { Graphon::from_step_matrix(SquareMatrix(3, 0.5), 8); }) == ErrorCode::size_mismatch);
    CHECK(code_of([] { Graphon::from_eigenpairs({0.5}, {GridFunction(8, 2.0)}); }) ==
          ErrorCode::orthonormality_violation);
    CHECK(code_of([] {
              Graphon::from_eigenpairs({0.5, 0.1}, {GridFunction(8, 1.0), GridFunction(8, 1.0)});
          }) == ErrorCode::orthonormality_violation);
    // 0.5 + 0.6 * 2 cos cos reaches 1.7
    CHECK(code_of([] {
              Graphon::from_eigenpairs({0.5, 0.6}, {GridFunction(64, 1.0), testing::cosine_mode(64, 1)});
          }) == ErrorCode::range_violation);
    CHECK(code_of([] { Graphon::from_eigenpairs({}, {}); }) == ErrorCode::rank_zero);
}

TEST_CASE("apply matches a brute-force kernel quadrature") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 6; ++k) {
        const auto inst = testing::random_instance(rng, 128);
        GridFunction v(128);
        for (double& x : v) x = u(rng);
        const auto fast = inst.graphon.apply(v);
        const auto slow = testing::brute_force_apply(inst.graphon, v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(fast[i] - slow[i]) <= 1e-13);
    }
}

TEST_CASE("apply is linear and bounded by the largest |lambda|") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 20; ++k) {
        const auto inst = testing::random_instance(rng, 256);
        const auto& g = inst.graphon;
        GridFunction v(256), w(256), vw(256);
        const double a = u(rng), b = u(rng);
        for (std::size_t i = 0; i < 256; ++i) {
            v[i] = u(rng);
            w[i] = u(rng);
            vw[i] = a * v[i] + b * w[i];
        }
        const auto gv = g.apply(v), gw = g.apply(w), gvw = g.apply(vw);
        for (std::size_t i = 0; i < 256; ++i) CHECK(std::abs(gvw[i] - (a * gv[i] + b * gw[i])) <= 1e-13);
        double lmax = 0.0;
        for (double l : g.eigenvalues()) lmax = std::max(lmax, std::abs(l));
        CHECK(std::sqrt(inner(gv, gv)) <= lmax * std::sqrt(inner(v, v)) + 1e-12);
        CHECK(g.hilbert_schmidt_norm() <= 1.0 + 1e-12);
    }
}

TEST_CASE("degree profile equals kernel row means") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 6; ++k) {
        const auto inst = testing::random_instance(rng, 128);
        const auto d = inst.graphon.degree_profile();
        const auto ones = testing::brute_force_apply(inst.graphon, GridFunction(128, 1.0));
        for (std::size_t i = 0; i < 128; ++i) CHECK(std::abs(d[i] - ones[i]) <= 1e-13);
    }
}

TEST_CASE("sign canonicalisation is idempotent and keeps the kernel") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
        const auto inst = testing::random_instance(rng, 64);
        const auto c1 = inst.graphon.canonicalize_signs();
        const auto c2 = c1.canonicalize_signs();
        for (double p : c1.ones_projections()) CHECK(p <= 0.0);
        for (std::size_t l = 0; l < c1.rank(); ++l)
            for (std::size_t i = 0; i < 64; ++i) CHECK(c1.eigenfunction(l, i) == c2.eigenfunction(l, i));
        for (std::size_t i = 0; i < 64; ++i)
            for (std::size_t j = 0; j < 64; ++j)
                CHECK(std::abs(c1.kernel(i, j) - inst.graphon.kernel(i, j)) <= 1e-14);
    }
}

TEST_CASE("mean field projections") {
    const auto g = Graphon::from_step_matrix(SquareMatrix::from_rows({{0.8, 0.2}, {0.2, 0.8}}), 64);
    const auto m = MeanField::blocks(g, {1.0, -0.5});
    CHECK(m[0] == 1.0);
    CHECK(m[63] == -0.5);
    const auto proj = g.project(m.samples());
    for (std::size_t l = 0; l < 2; ++l) CHECK(m.projections()[l] == proj[l]);
    CHECK(code_of([&] { MeanField(g, GridFunction(10, 1.0)); }) == ErrorCode::size_mismatch);
    CHECK(code_of([&] { MeanField::blocks(g, {1.0, 2.0, 3.0}); }) == ErrorCode::size_mismatch);
}

TEST_CASE("assumption diagnostics") {
    const auto inst = testing::constant_instance();
    auto rep = check_assumptions(inst.graphon, inst.mean, inst.params);
    CHECK(rep.a1);
    CHECK(rep.a2);
    CHECK(rep.rank == 1);
    CHECK(rep.a3);
    CHECK(rep.mean_value == 1.0);
    CHECK(rep.a4); // canonical f = -1
    CHECK_FALSE(rep.a5);
    // theta(0.5) + theta(0.5) - rho/2
    CHECK(rep.a5_min_residual == doctest::Approx(2 * 0.8660254037844386 - 0.5).epsilon(1e-14));

    const auto sbm = testing::sbm2_instance();
    rep = check_assumptions(sbm.graphon, sbm.mean, sbm.params);
    CHECK_FALSE(rep.a3); // block means differ
    CHECK_FALSE(rep.a4); // second eigenfunction is orthogonal to 1

    const auto full = Graphon::from_step_matrix(SquareMatrix(1, 1.0), 16);
    rep = check_assumptions(full, MeanField::constant(full, 1.0), inst.params);
    CHECK_FALSE(rep.a1);
    CHECK(rep.max_eigenvalue == doctest::Approx(1.0));

    const auto zero = MeanField::constant(inst.graphon, 0.0);
    CHECK_FALSE(check_assumptions(inst.graphon, zero, inst.params).a3);
}

}
