#include <doctest.h>

#include <cmath>
#include <random>

#include "gmfg/core.hpp"
#include "gmfg/error.hpp"
#include "instances.hpp"

using namespace gmfg;

TEST_SUITE("core") {

TEST_CASE("riccati gain reference values") {
    // golden ratio conjugate: pi^2 + pi = 1
    CHECK(solve_riccati({1, 1, 1, 0, 1}).pi == doctest::Approx(0.6180339887498949).epsilon(1e-15));
    // 4 pi^2 + pi/2 = 1, high-precision root
    CHECK(solve_riccati({2, 1, 0.5, 0, 1}).pi == doctest::Approx(0.44139110926865935).epsilon(1e-15));
    // sign of b does not matter
    CHECK(solve_riccati({-2, 1, 0.5, 0, 1}).pi == solve_riccati({2, 1, 0.5, 0, 1}).pi);
}

TEST_CASE("theta, xi and lambda_bar reference values") {
    const GameParams p{1, 1, 1, 0, 1};
    CHECK(theta(0.0, p) == doctest::Approx(1.118033988749895).epsilon(1e-15));
    CHECK(theta(0.5, p) == doctest::Approx(0.8660254037844386).epsilon(1e-15));
    CHECK(theta(1.0, p) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(xi(0.5, p) == doctest::Approx(-0.3660254037844386).epsilon(1e-14));
    CHECK(lambda_bar(0.5, p) == doctest::Approx(0.2520085849654562).epsilon(1e-14));
    CHECK(xi(0.0, p) == doctest::Approx(0.5 - 1.118033988749895).epsilon(1e-14));
    CHECK(lambda_bar(0.0, p) == 0.0);
}

TEST_CASE("errors") {
    const GameParams p{1, 1, 1, 0, 1};
    CHECK_THROWS_AS(xi(1.0, p), Error);
    try {
        lambda_bar(1.0, p);
        FAIL("expected a1 violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::a1_violation);
    }
    try {
        theta(10.0, p); // radicand 0.25 - 9 < 0
        FAIL("expected domain error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::domain_error);
    }
    for (GameParams bad : {GameParams{0, 1, 1, 0, 1}, GameParams{1, 0, 1, 0, 1}, GameParams{1, 1, -1, 0, 1},
                           GameParams{1, 1, 1, -0.1, 1}, GameParams{1, 1, 1, 0, 0}, GameParams{NAN, 1, 1, 0, 1}}) {
        try {
            solve_riccati(bad);
            FAIL("expected invalid params");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::invalid_params);
        }
    }
}

TEST_CASE("riccati properties over random parameters") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 1000; ++k) {
        const auto p = testing::random_params(rng);
        const double pi = solve_riccati(p).pi;
        const double A = p.gain_ratio();
        CHECK(pi > 0.0);
        CHECK(std::abs(A * pi * pi + p.rho * pi - 1.0) <= 1e-12);
        CHECK(std::abs(A * pi + p.rho - 1.0 / pi) <= 1e-12);
        CHECK(std::abs(p.rho / 2 + theta(0.0, p) - 1.0 / pi) <= 1e-12 / pi);
    }
}

TEST_CASE("mode exponents are monotone and negative below one") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k) {
        const auto p = testing::random_params(rng);
        double prev = -INFINITY;
        for (double lam = -1.0; lam < 1.0 - 1e-6; lam += 0.01) {
            const double x = xi(lam, p);
            CHECK(x < 0.0);
            CHECK(x > prev); // xi increases with lambda
            prev = x;
            CHECK(std::abs(x - (p.rho / 2 - theta(lam, p))) <= 1e-12 * (1 + std::abs(x)));
            CHECK(lambda_bar(lam, p) * (theta(lam, p) + theta(0, p)) == doctest::Approx(lam).epsilon(1e-13));
        }
    }
}

}
