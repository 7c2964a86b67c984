#pragma once

#include <string>
#include <vector>

#include "kp2stab/energy_trace.hpp"
#include "kp2stab/stepper.hpp"

namespace kp2stab {

struct IdentityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    int Nx = 0;
    double dt = 0.0;
    double t = 0.0;  // time of the reported row, or the run horizon
};

struct DissipationCheck {
    std::vector<IdentityReport> steps;
    IdentityReport worst;
};

// Centred energy difference against the dissipation law at interval midpoints.
DissipationCheck check_dissipation_identity(const SimulationRun& run);
// x-multiplier identity integrated over the whole run.
IdentityReport morawetz_identity_check(const SimulationRun& run);
// (T - t)-multiplier identity integrated over the whole run.
IdentityReport trazos_identity_check(const SimulationRun& run);

struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// int_0^T ||u||_{H^1_x}^2 dt against the a-priori constant times ||u0||^2.
BoundCheck kato_bound_check(const SimulationRun& run);
// int_0^T ||u||^2 dt <= T ||u0||^2.
BoundCheck trace_corollary_check(const SimulationRun& run);

struct DecayFit {
    double rate = 0.0;
    double kappa_fit = 0.0;
    double r_squared = 0.0;
    double t0 = 0.0;
    double t1 = 0.0;
    int samples = 0;
};

// Least squares on ln E over [t0, t1]; the single-argument form uses the last half.
DecayFit fit_decay(const EnergyTrace& trace, double t0, double t1);
DecayFit fit_decay(const EnergyTrace& trace);

double observability_ratio(const StateField& u0, const SolverHandle& h);
double observability_ratio(const StateField& u0, const TimeScheme& scheme, const FeedbackConfig& cfg);

struct DecayConstants {
    double C_obs = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double kappa = 0.0;
};

DecayConstants decay_constants(double C_obs, double T);

// max over the trace of E(t) / (kappa e^{-theta t} E(0)); <= 1 means the envelope holds.
double envelope_ratio(const EnergyTrace& trace, double kappa, double theta);

struct ObservabilityReport {
    std::vector<std::string> names;
    std::vector<double> ratios;
    std::vector<double> envelope;
    DecayConstants constants;
    double T = 0.0;
    bool envelope_holds = false;
};

struct NamedState {
    std::string name;
    StateField u0;
};

ObservabilityReport estimate_observability(const std::vector<NamedState>& samples, const SolverHandle& h);

// Trapezoid in time over a trace column, optionally weighted by (t_end - t).
double time_integral(const std::vector<double>& t, const std::vector<double>& v, bool remaining_weight = false);

}  // namespace kp2stab
