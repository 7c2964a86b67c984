#pragma once

#include <cstddef>
#include <vector>

#include "kp2stab/grid.hpp"
#include "kp2stab/operators.hpp"

namespace kp2stab {

// Per-record diagnostics of a run. Row n of dEdt/rhs/residual describes the
// interval (t_{n-1}, t_n]: dEdt is the centred energy difference, rhs the
// dissipation law evaluated on the interval midpoint state. Row 0 has no
// interval and carries NaN there.
struct EnergyTrace {
    std::vector<double> t, E, I_ux0, I_top, I_nloc, dEdt, rhs, residual;

    // Volume integrals feeding the multiplier identities.
    std::vector<double> l2_sq;     // int u^2
    std::vector<double> ux_sq;     // int u_x^2
    std::vector<double> nloc_sq;   // int (dx^{-1} u_y)^2
    std::vector<double> xu_sq;     // int x u^2
    std::vector<double> x_top_sq;  // int_0^L x u(x,L)^2 dx

    std::size_t size() const { return t.size(); }
};

double energy(const StateField& u);
double dissipation_rhs(const Traces& tr, const FeedbackConfig& cfg);
double dissipation_rhs(double I_ux0, double I_top, double I_nloc, const FeedbackConfig& cfg);
double dissipation_constant(const FeedbackConfig& cfg);

// |a - b| / max(|a|, |b|), zero when both vanish.
double relative_residual(double a, double b);

void record_state(EnergyTrace& tr, double t, const StateField& u, const StateField* previous,
                  const FeedbackConfig& cfg);

}  // namespace kp2stab
