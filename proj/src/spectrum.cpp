#include "kp2stab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kp2stab/error.hpp"
#include "kp2stab/manufactured.hpp"

namespace kp2stab {

double weighted_operator_norm(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || w.size() != n) throw DimensionError("weighted norm: size mismatch");
    const Eigen::VectorXd sw = w.cwiseSqrt();
    Eigen::VectorXd x(n);
    for (Eigen::Index k = 0; k < n; ++k) x[k] = 1.0 + 0.5 * std::sin(0.7 * k);
    x.normalize();
    double est = 0.0;
    for (int it = 0; it < 2000; ++it) {
        const Eigen::VectorXd y = sw.cwiseProduct(A * x.cwiseQuotient(sw));
        Eigen::VectorXd z = sw.cwiseInverse().cwiseProduct(A.transpose() * sw.cwiseProduct(y));
        const double next = std::sqrt(z.norm());
        if (z.norm() == 0.0) return 0.0;
        x = z / z.norm();
        if (it > 10 && std::abs(next - est) <= 1e-12 * next) {
            est = next;
            break;
        }
        est = next;
    }
    return est;
}

double symmetric_part_check(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
    const Eigen::VectorXd sw = w.cwiseSqrt();
    Eigen::MatrixXd B = sw.asDiagonal() * A * sw.cwiseInverse().asDiagonal();
    Eigen::MatrixXd S = 0.5 * (B + B.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");
    return es.eigenvalues().maxCoeff();
}

double symmetric_part_check(const GeneratorMatrix& A) { return symmetric_part_check(A.entries, A.grid.weights()); }

SpectrumReport compute_spectrum(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || w.size() != n) throw DimensionError("spectrum: size mismatch");
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver did not converge");
    SpectrumReport rep;
    rep.norm = weighted_operator_norm(A, w);
    rep.tau = symmetric_part_check(A, w);

    const Eigen::VectorXcd lam = es.eigenvalues();
    Eigen::MatrixXcd V = es.eigenvectors();
    const Eigen::MatrixXcd AV = A.cast<std::complex<double>>() * V;
    rep.all_certified = true;
    rep.pairs.reserve(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        EigenPair p;
        p.lambda = lam[k];
        const double nrm = std::sqrt((w.array() * V.col(k).array().abs2()).sum());
        p.phi = V.col(k) / nrm;
        const Eigen::VectorXcd r = (AV.col(k) - lam[k] * V.col(k)) / nrm;
        p.residual = std::sqrt((w.array() * r.array().abs2()).sum());
        p.certified = p.residual <= cert_tol * rep.norm;
        rep.all_certified = rep.all_certified && p.certified;
        rep.pairs.push_back(std::move(p));
    }
    std::stable_sort(rep.pairs.begin(), rep.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
        return a.lambda.imag() > b.lambda.imag();
    });
    rep.sigma = n > 0 ? rep.pairs.front().lambda.real() : 0.0;
    return rep;
}

SpectrumReport compute_spectrum(const GeneratorMatrix& A) { return compute_spectrum(A.entries, A.grid.weights()); }

AdjointnessStats adjointness_check(const GeneratorMatrix& A, const GeneratorMatrix& A_star, int samples,
                                   std::uint64_t seed) {
    if (!(A.grid == A_star.grid)) throw DimensionError("adjointness check on different grids");
    if (A.variant != Variant::forward || A_star.variant != Variant::adjoint)
        throw ConfigError("adjointness check expects a forward and an adjoint generator");
    const Grid2D& g = A.grid;
    const Eigen::VectorXd w = g.weights();
    const double norm = weighted_operator_norm(A.entries, w);
    auto discrepancy = [&](const StateField& u, const StateField& v) {
        const double lhs = w.dot((A.entries * u.values()).cwiseProduct(v.values()));
        const double rhs = w.dot(u.values().cwiseProduct(A_star.entries * v.values()));
        return std::abs(lhs - rhs) / (weighted_norm(u) * weighted_norm(v) * norm);
    };
    AdjointnessStats st;
    st.samples = samples;
    std::mt19937_64 eng(seed);
    for (int s = 0; s < samples; ++s) {
        const StateField u = interior_bump_field(g, eng());
        const StateField v = interior_bump_field(g, eng());
        st.interior = std::max(st.interior, discrepancy(u, v));

        std::vector<double> cu(4), cv(4);
        for (double& c : cu) c = unit_symmetric(eng());
        for (double& c : cv) c = unit_symmetric(eng());
        const StateField um = feedback_manifold_field(g, A.config, cu, Variant::forward);
        const StateField vm = feedback_manifold_field(g, A.config, cv, Variant::adjoint);
        st.manifold = std::max(st.manifold, discrepancy(um, vm));
    }
    return st;
}

VisibilityRecord eigen_visibility(const EigenPair& p, const Grid2D& g, const FeedbackConfig& cfg) {
    if (p.phi.size() != g.unknowns()) throw DimensionError("eigenvector length does not match grid");
    const StateField re(g, p.phi.real());
    const StateField im(g, p.phi.imag());
    const Traces tr = boundary_traces(re, cfg);
    const Traces ti = boundary_traces(im, cfg);
    VisibilityRecord v;
    v.lambda = p.lambda;
    v.I_ux0 = tr.I_ux0 + ti.I_ux0;
    v.I_top = tr.I_top + ti.I_top;
    v.I_nloc = tr.I_nloc + ti.I_nloc;
    const double n2 = inner_product(re, re) + inner_product(im, im);
    v.visibility = (v.I_ux0 + v.I_top + v.I_nloc) / n2;
    return v;
}

std::vector<ScanRow> critical_length_scan(const std::vector<double>& L_values, const FeedbackConfig& base,
                                          int resolution) {
    std::vector<ScanRow> rows;
    for (double L : L_values) {
        FeedbackConfig cfg = base;
        cfg.L = L;
        const Grid2D g = build_grid(L, resolution, resolution);
        const SpectrumReport rep = compute_spectrum(assemble_generator(g, cfg));
        ScanRow r;
        r.L = L;
        r.drift = cfg.drift;
        r.sigma = rep.sigma;
        r.total = static_cast<int>(rep.pairs.size());
        r.min_visibility = INFINITY;
        for (const EigenPair& p : rep.pairs) {
            if (!p.certified) continue;
            ++r.certified;
            r.min_visibility = std::min(r.min_visibility, eigen_visibility(p, g, cfg).visibility);
        }
        if (r.certified == 0) r.min_visibility = 0.0;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace kp2stab
