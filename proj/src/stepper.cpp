#include "kp2stab/stepper.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "kp2stab/error.hpp"
#include "kp2stab/manufactured.hpp"

namespace kp2stab {

void TimeScheme::validate() const {
    if (!(dt > 0.0) || !(T > 0.0) || dt > T) {
        std::ostringstream m;
        m << "time step must satisfy 0 < dt <= T, got dt=" << dt << " T=" << T;
        throw ConfigError(m.str());
    }
    if (!(theta >= 0.5 && theta <= 1.0)) {
        std::ostringstream m;
        m << "theta must lie in [0.5, 1], got theta=" << theta;
        throw ConfigError(m.str());
    }
}

int TimeScheme::steps() const { return static_cast<int>(std::floor(T / dt * (1.0 + 1e-12))); }

InitialPreset parse_preset(const std::string& name) {
    if (name == "gaussian") return InitialPreset::gaussian;
    if (name == "sine-product") return InitialPreset::sine_product;
    if (name == "random-smooth") return InitialPreset::random_smooth;
    if (name == "zero") return InitialPreset::zero;
    throw ConfigError("unknown initial condition preset '" + name +
                      "' (gaussian, sine-product, random-smooth, zero)");
}

std::string preset_name(InitialPreset p) {
    switch (p) {
    case InitialPreset::gaussian: return "gaussian";
    case InitialPreset::sine_product: return "sine-product";
    case InitialPreset::random_smooth: return "random-smooth";
    case InitialPreset::zero: return "zero";
    }
    return "zero";
}

StateField initial_condition(InitialPreset preset, const Grid2D& g, std::uint64_t seed) {
    const double L = g.L;
    const double pi = std::numbers::pi;
    switch (preset) {
    case InitialPreset::gaussian: {
        const double w = L / 8.0;
        return StateField::sample(g, [&](double x, double y) {
            const double dx = x - 0.5 * L, dy = y - 0.5 * L;
            return std::exp(-(dx * dx + dy * dy) / (w * w));
        });
    }
    case InitialPreset::sine_product:
        return StateField::sample(g, [&](double x, double y) {
            return std::sin(pi * x / L) * std::cos(pi * y / (2.0 * L));
        });
    case InitialPreset::random_smooth: {
        // Raw engine output is mapped by hand; std distributions differ across
        // standard libraries.
        constexpr int kx = 4, ky = 4;
        std::mt19937_64 eng(seed);
        double c[kx][ky];
        for (int k = 0; k < kx; ++k)
            for (int m = 0; m < ky; ++m) {
                c[k][m] = unit_symmetric(eng()) / ((k + 1.0) * (m + 1.0));
            }
        return StateField::sample(g, [&](double x, double y) {
            double s = 0.0;
            for (int k = 0; k < kx; ++k)
                for (int m = 0; m < ky; ++m)
                    s += c[k][m] * std::sin((k + 1) * pi * x / L) * std::cos(m * pi * y / L);
            return s;
        });
    }
    case InitialPreset::zero:
        return StateField(g);
    }
    return StateField(g);
}

SolverHandle factorize(const GeneratorMatrix& A, const TimeScheme& scheme) {
    scheme.validate();
    const int n = A.grid.unknowns();
    if (A.entries.rows() != n || A.entries.cols() != n) throw DimensionError("generator size does not match its grid");
    SolverHandle h;
    h.grid = A.grid;
    h.config = A.config;
    h.scheme = scheme;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    h.explicit_part = I + scheme.dt * (1.0 - scheme.theta) * A.entries;
    h.lu.compute(I - scheme.dt * scheme.theta * A.entries);
    const Eigen::VectorXd d = h.lu.matrixLU().diagonal().cwiseAbs();
    h.min_pivot = d.minCoeff();
    if (!(h.min_pivot > 1e-13 * d.maxCoeff())) {
        std::ostringstream m;
        m << "implicit step matrix is numerically singular (smallest pivot " << h.min_pivot << ")";
        throw SolverError(m.str());
    }
    return h;
}

StateField step(const StateField& u, const SolverHandle& h) {
    if (!(u.grid() == h.grid)) throw DimensionError("state and solver live on different grids");
    Eigen::VectorXd next = h.lu.solve(h.explicit_part * u.values());
    return StateField(h.grid, std::move(next));
}

SimulationRun simulate(const StateField& u0, const SolverHandle& h, int stride) {
    if (stride < 1) throw ConfigError("snapshot stride must be >= 1");
    if (!(u0.grid() == h.grid)) throw DimensionError("initial state and solver live on different grids");
    const auto start = std::chrono::steady_clock::now();
    SimulationRun run;
    run.grid = h.grid;
    run.config = h.config;
    run.scheme = h.scheme;
    run.stride = stride;

    const int nsteps = h.scheme.steps();
    StateField u = u0;
    StateField last_recorded = u0;
    record_state(run.trace, 0.0, u, nullptr, h.config);
    run.snapshots.push_back(u);
    run.snapshot_times.push_back(0.0);
    for (int n = 1; n <= nsteps; ++n) {
        StateField next = step(u, h);
        if (!next.values().allFinite()) {
            std::ostringstream m;
            m << "non-finite state at step " << n;
            throw SolverError(m.str());
        }
        u = std::move(next);
        if (n % stride == 0) {
            const double t = n * h.scheme.dt;
            record_state(run.trace, t, u, &last_recorded, h.config);
            run.snapshots.push_back(u);
            run.snapshot_times.push_back(t);
            last_recorded = u;
        }
    }
    run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

SimulationRun simulate(const StateField& u0, const TimeScheme& scheme, const FeedbackConfig& cfg, int stride) {
    const GeneratorMatrix A = assemble_generator(u0.grid(), cfg);
    return simulate(u0, factorize(A, scheme), stride);
}

}  // namespace kp2stab
