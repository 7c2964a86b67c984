#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "kp2stab/error.hpp"
#include "kp2stab/grid.hpp"

using namespace kp2stab;

TEST_CASE("build_grid spacing and unknown count") {
    const Grid2D g = build_grid(1.0, 10, 10);
    CHECK(g.hx == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.hy == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.unknowns() == 9 * 11);
}

TEST_CASE("build_grid rejects bad input") {
    CHECK_THROWS_AS(build_grid(0.0, 16, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(-1.0, 16, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, 7, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, 16, 4), ConfigError);
}

TEST_CASE("spacing times count recovers L") {
    std::mt19937_64 eng(7);
    std::uniform_real_distribution<double> len(0.1, 20.0);
    for (int k = 0; k < 200; ++k) {
        const double L = len(eng);
        const int N = 8 + static_cast<int>(eng() % 120);
        const Grid2D g = build_grid(L, N, N + 3);
        CHECK(std::abs(g.hx * g.Nx - L) <= 4e-16 * L);
        CHECK(std::abs(g.hy * g.Ny - L) <= 4e-16 * L);
    }
}

TEST_CASE("flat index covers every unknown once") {
    const Grid2D g = build_grid(2.0, 9, 12);
    std::set<int> seen;
    for (int j = 0; j <= g.Ny; ++j)
        for (int i = 1; i < g.Nx; ++i) seen.insert(g.index(i, j));
    CHECK(seen.size() == static_cast<std::size_t>(g.unknowns()));
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == g.unknowns() - 1);
}

TEST_CASE("unit field norm equals the explicit weight sum") {
    const Grid2D g = build_grid(1.0, 10, 10);
    StateField one(g, Eigen::VectorXd::Ones(g.unknowns()));
    double sum = 0.0;
    for (int j = 0; j <= 10; ++j)
        for (int i = 1; i < 10; ++i) sum += (j == 0 || j == 10) ? 0.005 : 0.01;
    CHECK(inner_product(one, one) == doctest::Approx(sum).epsilon(1e-14));
    CHECK(inner_product(one, one) == doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("quadrature is exact for bilinear fields on its support") {
    // Full x-weights with zeroed end columns integrate over [h/2, L - h/2].
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double L = 0.5 + trial * 0.37;
        const Grid2D g = build_grid(L, 8 + trial, 9 + 2 * trial);
        const double a = coef(eng), b = coef(eng), c = coef(eng), d = coef(eng);
        StateField p = StateField::sample(g, [&](double x, double y) { return a + b * x + c * y + d * x * y; });
        StateField one(g, Eigen::VectorXd::Ones(g.unknowns()));
        const double x0 = 0.5 * g.hx, x1 = L - 0.5 * g.hx;
        const double ix = x1 - x0, ixx = 0.5 * (x1 * x1 - x0 * x0);
        const double exact = a * ix * L + b * ixx * L + c * ix * 0.5 * L * L + d * ixx * 0.5 * L * L;
        CHECK(inner_product(p, one) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("inner product is symmetric, bilinear and positive") {
    const Grid2D g = build_grid(3.0, 12, 10);
    std::mt19937_64 eng(11);
    std::normal_distribution<double> n01;
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd a(g.unknowns()), b(g.unknowns()), c(g.unknowns());
        for (int k = 0; k < g.unknowns(); ++k) {
            a[k] = n01(eng);
            b[k] = n01(eng);
            c[k] = n01(eng);
        }
        StateField A(g, a), B(g, b), C(g, c), AB(g, 2.0 * a - 3.0 * b);
        CHECK(inner_product(A, B) == doctest::Approx(inner_product(B, A)).epsilon(1e-13));
        CHECK(inner_product(AB, C) ==
              doctest::Approx(2.0 * inner_product(A, C) - 3.0 * inner_product(B, C)).epsilon(1e-11));
        CHECK(inner_product(A, A) > 0.0);
    }
}

TEST_CASE("mismatched grids are a dimension error") {
    StateField a(build_grid(1.0, 10, 10)), b(build_grid(1.0, 12, 10));
    CHECK_THROWS_AS(inner_product(a, b), DimensionError);
    CHECK_THROWS_AS(StateField(build_grid(1.0, 10, 10), Eigen::VectorXd::Zero(5)), DimensionError);
}

TEST_CASE("Dirichlet columns read as zero") {
    const Grid2D g = build_grid(1.0, 8, 8);
    StateField u(g, Eigen::VectorXd::Ones(g.unknowns()));
    CHECK(u.at(0, 3) == 0.0);
    CHECK(u.at(8, 3) == 0.0);
    CHECK(u.at(4, 3) == 1.0);
}
