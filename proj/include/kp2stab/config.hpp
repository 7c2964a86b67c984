#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "kp2stab/operators.hpp"
#include "kp2stab/stepper.hpp"

namespace kp2stab {

struct RunConfig {
    std::string command;
    double L = 0.0;
    int Nx = 0;
    int Ny = 0;
    double alpha = 0.0;
    double beta = 0.0;
    bool drift = true;
    double T = 0.0;
    double dt = 0.0;  // resolved to T/1024 when not given
    double theta = 0.5;
    std::string ic = "gaussian";
    std::uint64_t seed = 0;
    int stride = 1;
    int snapshot_every = 0;  // 0: only the first and last state
    std::string out = "kp2stab_out";
    double fit_t0 = -1.0;  // negative: last half of the run
    double fit_t1 = -1.0;
    int samples = 20;
    std::vector<double> L_values;
    std::vector<int> refinements;

    FeedbackConfig feedback() const;
    TimeScheme scheme() const;
    bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& known_commands();

// args[0] is the subcommand. Precedence: defaults < --config file < KP2STAB_OUT
// (output dir only) < flags. env_out may be null.
RunConfig parse_config(const std::vector<std::string>& args, const char* env_out);

nlohmann::json config_to_json(const RunConfig& c);
// Overlays keys of j onto base; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base);
// Single-line JSON written as the '#' header of every CSV.
std::string config_echo(const RunConfig& c);

void validate(const RunConfig& c);

// Runs one subcommand, writing CSV artifacts into c.out. Progress goes to log.
void run_command(const RunConfig& c, std::ostream& log);

// Parses argv, runs, and maps errors to exit codes (2 config, 3 dimension,
// 4 solver, 5 diagnostic, 6 io).
int run_cli(int argc, char** argv);

}  // namespace kp2stab
