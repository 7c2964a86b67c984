#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "kp2stab/grid.hpp"

namespace kp2stab {

struct FeedbackConfig {
    double alpha = 0.5;  // right-edge slope gain, |alpha| < 1
    double beta = 1.0;   // top-edge gain, beta > 0
    bool drift = true;   // keep the first-order transport term
    double L = 0.0;

    void validate() const;
};

// x-antiderivatives on one grid line by the trapezoid rule.
// Right: psi(L) = 0, psi_i = psi_{i+1} - h/2 (u_i + u_{i+1}).
// Left:  psi(0) = 0, psi_{i+1} = psi_i + h/2 (u_i + u_{i+1}).
std::vector<double> dx_inv_right(std::span<const double> line, double h);
std::vector<double> dx_inv_left(std::span<const double> line, double h);

StateField apply_generator(const StateField& u, const FeedbackConfig& cfg);
StateField apply_adjoint(const StateField& v, const FeedbackConfig& cfg);

enum class Variant { forward, adjoint };

struct GeneratorMatrix {
    Eigen::MatrixXd entries;
    Grid2D grid;
    FeedbackConfig config;
    Variant variant = Variant::forward;
};

GeneratorMatrix assemble_generator(const Grid2D& g, const FeedbackConfig& cfg);
GeneratorMatrix assemble_adjoint(const Grid2D& g, const FeedbackConfig& cfg);

struct Traces {
    std::vector<double> ux0;        // u_x(0, y_j), j = 0..Ny
    std::vector<double> u_top;      // u(x_i, L), i = 0..Nx
    std::vector<double> nonlocal0;  // (dx^{-1} u_y)(0, y_j), j = 0..Ny
    double I_ux0 = 0.0;
    double I_top = 0.0;
    double I_nloc = 0.0;
};

Traces boundary_traces(const StateField& u, const FeedbackConfig& cfg);

// Node arrays (Nx+1) x (Ny+1), indexed (i, j), used by the multiplier identities.
// x_slope: central differences inside, the one-sided trace at x = 0 and its
// feedback image at x = L.
Eigen::MatrixXd x_slope(const StateField& u, const FeedbackConfig& cfg);
// dx^{-1} u_y with the same y closure as the generator.
Eigen::MatrixXd nonlocal_y(const StateField& u, const FeedbackConfig& cfg);

// Trapezoid integral over the full node lattice of a (Nx+1) x (Ny+1) array.
double domain_integral(const Eigen::MatrixXd& nodes, const Grid2D& g);

}  // namespace kp2stab
