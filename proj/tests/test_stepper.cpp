#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "kp2stab/error.hpp"
#include "kp2stab/spectrum.hpp"
#include "kp2stab/stepper.hpp"

using namespace kp2stab;
constexpr double pi = std::numbers::pi;

namespace {

FeedbackConfig make_cfg(double L, double a = 0.5, double b = 1.0, bool drift = true) {
    FeedbackConfig c;
    c.alpha = a;
    c.beta = b;
    c.drift = drift;
    c.L = L;
    return c;
}

TimeScheme make_scheme(double dt, double T, double theta = 0.5) {
    TimeScheme s;
    s.dt = dt;
    s.T = T;
    s.theta = theta;
    return s;
}

}  // namespace

TEST_CASE("scheme validation") {
    CHECK_THROWS_AS(make_scheme(0.0, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(make_scheme(2.0, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(make_scheme(0.1, 1.0, 0.4).validate(), ConfigError);
    CHECK_THROWS_AS(make_scheme(0.1, 1.0, 1.1).validate(), ConfigError);
    CHECK_NOTHROW(make_scheme(0.1, 1.0, 1.0).validate());
    CHECK(make_scheme(0.1, 1.0).steps() == 10);
    CHECK(make_scheme(1.0 / 1024.0, 5.0).steps() == 5120);
}

TEST_CASE("presets") {
    const Grid2D g = build_grid(pi, 16, 16);
    CHECK(parse_preset("gaussian") == InitialPreset::gaussian);
    CHECK(preset_name(parse_preset("sine-product")) == "sine-product");
    CHECK_THROWS_AS(parse_preset("tophat"), ConfigError);
    const StateField a = initial_condition(InitialPreset::random_smooth, g, 4);
    const StateField b = initial_condition(InitialPreset::random_smooth, g, 4);
    const StateField c = initial_condition(InitialPreset::random_smooth, g, 5);
    CHECK(a.values() == b.values());
    CHECK(a.values() != c.values());
    CHECK(initial_condition(InitialPreset::zero, g).values().norm() == 0.0);
    const StateField gs = initial_condition(InitialPreset::gaussian, g);
    CHECK(gs.at(8, 8) == doctest::Approx(1.0));
}

TEST_CASE("zero state stays zero") {
    const Grid2D g = build_grid(1.0, 10, 10);
    const SimulationRun run = simulate(StateField(g), make_scheme(0.01, 0.2), make_cfg(1.0));
    for (double e : run.trace.E) CHECK(e == 0.0);
}

TEST_CASE("energy is non-increasing for every preset and gain") {
    const double L = pi;
    const Grid2D g = build_grid(L, 16, 16);
    for (double a : {0.0, 0.5, 0.9})
        for (double b : {0.1, 1.0})
            for (bool drift : {true, false})
                for (InitialPreset p : {InitialPreset::gaussian, InitialPreset::sine_product, InitialPreset::random_smooth}) {
                    const SimulationRun run = simulate(initial_condition(p, g, 3), make_scheme(0.02, 1.0), make_cfg(L, a, b, drift));
                    const auto& E = run.trace.E;
                    for (std::size_t k = 1; k < E.size(); ++k) REQUIRE(E[k] <= E[k - 1] * (1.0 + 1e-10));
                }
}

TEST_CASE("theta = 1 also dissipates") {
    const Grid2D g = build_grid(2.0, 12, 12);
    const SimulationRun run = simulate(initial_condition(InitialPreset::gaussian, g), make_scheme(0.05, 1.0, 1.0), make_cfg(2.0));
    for (std::size_t k = 1; k < run.trace.size(); ++k) CHECK(run.trace.E[k] <= run.trace.E[k - 1]);
}

TEST_CASE("Crank-Nicolson conserves energy under the skew part") {
    const double L = pi;
    const Grid2D g = build_grid(L, 16, 16);
    GeneratorMatrix A = assemble_generator(g, make_cfg(L));
    const Eigen::VectorXd w = g.weights();
    // W-skew part: (A - W^{-1} A^T W) / 2.
    const Eigen::MatrixXd At = w.cwiseInverse().asDiagonal() * A.entries.transpose() * w.asDiagonal();
    A.entries = 0.5 * (A.entries - At);
    const SimulationRun run = simulate(initial_condition(InitialPreset::gaussian, g), factorize(A, make_scheme(0.01, 1.0)));
    REQUIRE(run.trace.size() == 101);
    const double E0 = run.trace.E.front();
    for (double e : run.trace.E) CHECK(std::abs(e - E0) <= 1e-8 * E0);
}

TEST_CASE("one-step map is a contraction in the weighted norm") {
    const double L = 1.5;
    const Grid2D g = build_grid(L, 12, 12);
    const GeneratorMatrix A = assemble_generator(g, make_cfg(L, 0.9, 0.1, false));
    const TimeScheme s = make_scheme(0.01, 1.0);
    const SolverHandle h = factorize(A, s);
    const double tau = symmetric_part_check(A);
    // Power iteration on S^T W S relative to W, i.e. the W-norm of the step map.
    StateField u = initial_condition(InitialPreset::random_smooth, g, 1);
    double growth = 0.0;
    for (int it = 0; it < 200; ++it) {
        const StateField v = step(u, h);
        growth = weighted_norm(v) / weighted_norm(u);
        u = StateField(g, v.values() / weighted_norm(v));
    }
    CHECK(growth <= 1.0 + std::max(tau, 0.0) * s.dt + 1e-12);
}

TEST_CASE("refactorization is bit-reproducible") {
    const Grid2D g = build_grid(pi, 12, 12);
    const GeneratorMatrix A = assemble_generator(g, make_cfg(pi));
    const TimeScheme s = make_scheme(0.03, 0.3);
    const StateField u0 = initial_condition(InitialPreset::gaussian, g);
    const SimulationRun a = simulate(u0, factorize(A, s));
    const SimulationRun b = simulate(u0, factorize(A, s));
    CHECK(a.snapshots.back().values() == b.snapshots.back().values());
}

TEST_CASE("snapshot count follows the stride") {
    const Grid2D g = build_grid(1.0, 8, 8);
    const TimeScheme s = make_scheme(0.01, 1.0);
    for (int stride : {1, 3, 7, 10}) {
        const SimulationRun run = simulate(initial_condition(InitialPreset::sine_product, g), s, make_cfg(1.0), stride);
        CHECK(run.snapshots.size() == static_cast<std::size_t>(100 / stride + 1));
        CHECK(run.trace.size() == run.snapshots.size());
        for (std::size_t k = 1; k < run.trace.size(); ++k) CHECK(run.trace.t[k] > run.trace.t[k - 1]);
    }
    CHECK_THROWS_AS(simulate(StateField(g), s, make_cfg(1.0), 0), ConfigError);
}

TEST_CASE("singular implicit matrix is reported") {
    const Grid2D g = build_grid(1.0, 8, 8);
    GeneratorMatrix A = assemble_generator(g, make_cfg(1.0));
    const TimeScheme s = make_scheme(0.1, 1.0);
    A.entries = Eigen::MatrixXd::Identity(g.unknowns(), g.unknowns()) / (s.dt * s.theta);
    CHECK_THROWS_AS(factorize(A, s), SolverError);
}

TEST_CASE("grid mismatch between state and solver") {
    const Grid2D g = build_grid(1.0, 8, 8);
    const SolverHandle h = factorize(assemble_generator(g, make_cfg(1.0)), make_scheme(0.1, 1.0));
    CHECK_THROWS_AS(step(StateField(build_grid(1.0, 10, 8)), h), DimensionError);
}
