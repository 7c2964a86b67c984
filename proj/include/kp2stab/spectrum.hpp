#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "kp2stab/operators.hpp"

namespace kp2stab {

struct EigenPair {
    std::complex<double> lambda;
    Eigen::VectorXcd phi;   // unit weighted norm
    double residual = 0.0;  // ||A phi - lambda phi||_W
    bool certified = false;
};

struct SpectrumReport {
    std::vector<EigenPair> pairs;  // sorted by decreasing real part
    double sigma = 0.0;            // spectral abscissa
    double tau = 0.0;              // top eigenvalue of the weighted symmetric part
    double norm = 0.0;             // weighted operator 2-norm
    bool all_certified = false;
};

// Largest singular value of W^{1/2} A W^{-1/2}.
double weighted_operator_norm(const Eigen::MatrixXd& A, const Eigen::VectorXd& w);
// Largest eigenvalue of the W-symmetric part of A.
double symmetric_part_check(const Eigen::MatrixXd& A, const Eigen::VectorXd& w);
double symmetric_part_check(const GeneratorMatrix& A);

// Residual certificate: ||A phi - lambda phi||_W <= cert_tol * ||A||_W.
constexpr double cert_tol = 1e-8;

SpectrumReport compute_spectrum(const Eigen::MatrixXd& A, const Eigen::VectorXd& w);
SpectrumReport compute_spectrum(const GeneratorMatrix& A);

struct AdjointnessStats {
    double interior = 0.0;  // fields supported away from the boundary
    double manifold = 0.0;  // fields obeying the forward / adjoint boundary conditions
    int samples = 0;
};

AdjointnessStats adjointness_check(const GeneratorMatrix& A, const GeneratorMatrix& A_star, int samples,
                                   std::uint64_t seed);

struct VisibilityRecord {
    std::complex<double> lambda;
    double visibility = 0.0;
    double I_ux0 = 0.0;
    double I_top = 0.0;
    double I_nloc = 0.0;
};

VisibilityRecord eigen_visibility(const EigenPair& p, const Grid2D& g, const FeedbackConfig& cfg);

struct ScanRow {
    double L = 0.0;
    bool drift = true;
    double sigma = 0.0;
    double min_visibility = 0.0;
    int certified = 0;
    int total = 0;
};

std::vector<ScanRow> critical_length_scan(const std::vector<double>& L_values, const FeedbackConfig& base,
                                          int resolution);

}  // namespace kp2stab
