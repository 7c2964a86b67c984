#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "kp2stab/energy_trace.hpp"
#include "kp2stab/grid.hpp"
#include "kp2stab/operators.hpp"

namespace kp2stab {

// One-step theta method: (I - dt theta A) u+ = (I + dt (1 - theta) A) u.
struct TimeScheme {
    double dt = 0.0;
    double theta = 0.5;
    double T = 0.0;

    void validate() const;
    int steps() const;
};

enum class InitialPreset { gaussian, sine_product, random_smooth, zero };

InitialPreset parse_preset(const std::string& name);
std::string preset_name(InitialPreset p);
StateField initial_condition(InitialPreset preset, const Grid2D& g, std::uint64_t seed = 0);

struct SolverHandle {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    Eigen::MatrixXd explicit_part;
    Grid2D grid;
    FeedbackConfig config;
    TimeScheme scheme;
    double min_pivot = 0.0;
};

SolverHandle factorize(const GeneratorMatrix& A, const TimeScheme& scheme);
StateField step(const StateField& u, const SolverHandle& h);

struct SimulationRun {
    std::vector<StateField> snapshots;
    std::vector<double> snapshot_times;
    EnergyTrace trace;
    Grid2D grid;
    FeedbackConfig config;
    TimeScheme scheme;
    int stride = 1;
    double wall_seconds = 0.0;
};

// Records (snapshot plus trace row) every `stride` steps, always including t = 0.
SimulationRun simulate(const StateField& u0, const SolverHandle& h, int stride = 1);
SimulationRun simulate(const StateField& u0, const TimeScheme& scheme, const FeedbackConfig& cfg,
                       int stride = 1);

}  // namespace kp2stab
