#include "kp2stab/energy_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kp2stab {

double energy(const StateField& u) { return 0.5 * inner_product(u, u); }

double dissipation_rhs(double I_ux0, double I_top, double I_nloc, const FeedbackConfig& cfg) {
    return -0.5 * (1.0 - cfg.alpha * cfg.alpha) * I_ux0 - 0.5 * I_nloc - cfg.beta * I_top;
}

double dissipation_rhs(const Traces& tr, const FeedbackConfig& cfg) {
    return dissipation_rhs(tr.I_ux0, tr.I_top, tr.I_nloc, cfg);
}

double dissipation_constant(const FeedbackConfig& cfg) {
    cfg.validate();
    return std::min(0.5 * (1.0 - cfg.alpha * cfg.alpha), cfg.beta);
}

double relative_residual(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return 0.0;
    return std::abs(a - b) / scale;
}

void record_state(EnergyTrace& tr, double t, const StateField& u, const StateField* previous,
                  const FeedbackConfig& cfg) {
    const Grid2D& g = u.grid();
    const Traces now = boundary_traces(u, cfg);
    const double E = energy(u);
    tr.t.push_back(t);
    tr.E.push_back(E);
    tr.I_ux0.push_back(now.I_ux0);
    tr.I_top.push_back(now.I_top);
    tr.I_nloc.push_back(now.I_nloc);

    if (previous) {
        const double dt = t - tr.t[tr.t.size() - 2];
        const double dEdt = (E - tr.E[tr.E.size() - 2]) / dt;
        StateField mid(g, 0.5 * (u.values() + previous->values()));
        const double rhs = dissipation_rhs(boundary_traces(mid, cfg), cfg);
        tr.dEdt.push_back(dEdt);
        tr.rhs.push_back(rhs);
        tr.residual.push_back(relative_residual(dEdt, rhs));
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        tr.dEdt.push_back(nan);
        tr.rhs.push_back(nan);
        tr.residual.push_back(nan);
    }

    const Eigen::MatrixXd ux = x_slope(u, cfg);
    const Eigen::MatrixXd f = nonlocal_y(u, cfg);
    Eigen::MatrixXd xu(g.Nx + 1, g.Ny + 1);
    for (int j = 0; j <= g.Ny; ++j)
        for (int i = 0; i <= g.Nx; ++i) xu(i, j) = g.x(i) * u.at(i, j) * u.at(i, j);
    tr.l2_sq.push_back(2.0 * E);
    tr.ux_sq.push_back(domain_integral(ux.cwiseProduct(ux), g));
    tr.nloc_sq.push_back(domain_integral(f.cwiseProduct(f), g));
    tr.xu_sq.push_back(domain_integral(xu, g));
    std::vector<double> top(g.Nx + 1);
    for (int i = 0; i <= g.Nx; ++i) top[i] = g.x(i) * now.u_top[i] * now.u_top[i];
    tr.x_top_sq.push_back(trapezoid(top.data(), g.Nx + 1, g.hx));
}

}  // namespace kp2stab
