#include "kp2stab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kp2stab/error.hpp"

namespace kp2stab {

void FeedbackConfig::validate() const {
    if (!(std::abs(alpha) < 1.0)) {
        std::ostringstream m;
        m << "feedback gain out of range: |alpha| < 1 required (0<|α|<1), got alpha=" << alpha;
        throw ConfigError(m.str());
    }
    if (!(beta > 0.0)) {
        std::ostringstream m;
        m << "feedback gain out of range: beta > 0 required (β>0), got beta=" << beta;
        throw ConfigError(m.str());
    }
    if (!(L > 0.0)) {
        std::ostringstream m;
        m << "domain length must be positive, got L=" << L;
        throw ConfigError(m.str());
    }
}

std::vector<double> dx_inv_right(std::span<const double> line, double h) {
    const int n = static_cast<int>(line.size());
    std::vector<double> psi(n, 0.0);
    for (int i = n - 2; i >= 0; --i) psi[i] = psi[i + 1] - 0.5 * h * (line[i] + line[i + 1]);
    return psi;
}

std::vector<double> dx_inv_left(std::span<const double> line, double h) {
    const int n = static_cast<int>(line.size());
    std::vector<double> psi(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) psi[i + 1] = psi[i] + 0.5 * h * (line[i] + line[i + 1]);
    return psi;
}

namespace {

void check_match(const Grid2D& g, const FeedbackConfig& cfg) {
    cfg.validate();
    if (std::abs(g.L - cfg.L) > 1e-12 * g.L) {
        std::ostringstream m;
        m << "grid length " << g.L << " does not match feedback config length " << cfg.L;
        throw ConfigError(m.str());
    }
}

// Full node array, row-major in j: U[j*(Nx+1) + i].
std::vector<double> to_nodes(const StateField& u) {
    const Grid2D& g = u.grid();
    std::vector<double> U((g.Nx + 1) * (g.Ny + 1), 0.0);
    for (int j = 0; j <= g.Ny; ++j)
        for (int i = 1; i < g.Nx; ++i) U[j * (g.Nx + 1) + i] = u.values()[g.index(i, j)];
    return U;
}

// One-sided second-order slope at x = 0 from the first two interior nodes.
inline double left_slope(const double* row, double h) { return (4.0 * row[1] - row[2]) / (2.0 * h); }

// -u_x - u_xxx on one line with u_0 = u_N = 0. The third derivative uses the
// upwind-biased stencil (-3, 10, -12, 6, -1)/(2h^3) on i-1..i+3, whose
// symmetric part is positive semidefinite. Two ghosts beyond x = L continue
// the line linearly with the feedback slope alpha * u_x(0).
void line_part(const double* row, int N, double h, double alpha, bool drift, double* out) {
    std::vector<double> e(N + 3, 0.0);
    std::copy(row, row + N + 1, e.begin());
    const double s = alpha * left_slope(row, h);
    e[N + 1] = h * s;
    e[N + 2] = 2.0 * h * s;
    const double c3 = 1.0 / (2.0 * h * h * h);
    const double c1 = 1.0 / (2.0 * h);
    for (int i = 1; i < N; ++i) {
        double d3 = c3 * (-3.0 * e[i - 1] + 10.0 * e[i] - 12.0 * e[i + 1] + 6.0 * e[i + 2] - e[i + 3]);
        double r = -d3;
        if (drift) r -= c1 * (e[i + 1] - e[i - 1]);
        out[i] = r;
    }
}

// Second y-difference on row j; edge rows use the mirrored ghost, so the
// boundary slope enters separately.
inline double yy_row(const std::vector<double>& U, int i, int j, int Nx, int Ny, double hy) {
    const int s = Nx + 1;
    const double inv = 1.0 / (hy * hy);
    if (j == 0) return 2.0 * (U[s + i] - U[i]) * inv;
    if (j == Ny) return 2.0 * (U[(Ny - 1) * s + i] - U[Ny * s + i]) * inv;
    return (U[(j + 1) * s + i] - 2.0 * U[j * s + i] + U[(j - 1) * s + i]) * inv;
}

enum class Side { forward, adjoint };

StateField apply_impl(const StateField& u, const FeedbackConfig& cfg, Side side) {
    const Grid2D& g = u.grid();
    check_match(g, cfg);
    const int Nx = g.Nx, Ny = g.Ny, s = Nx + 1;
    const std::vector<double> U = to_nodes(u);
    StateField out(g);
    std::vector<double> row(s), res(s), rev(s), gline(s);

    for (int j = 0; j <= Ny; ++j) {
        const double* r = U.data() + j * s;
        if (side == Side::forward) {
            line_part(r, Nx, g.hx, cfg.alpha, cfg.drift, res.data());
        } else {
            // Mirror image: the adjoint x-part is the forward one seen from x = L.
            for (int i = 0; i <= Nx; ++i) rev[i] = r[Nx - i];
            line_part(rev.data(), Nx, g.hx, cfg.alpha, cfg.drift, row.data());
            for (int i = 1; i < Nx; ++i) res[i] = row[Nx - i];
        }

        for (int i = 0; i <= Nx; ++i) gline[i] = yy_row(U, i, j, Nx, Ny, g.hy);
        std::vector<double> psi =
            side == Side::forward ? dx_inv_right(gline, g.hx) : dx_inv_left(gline, g.hx);
        if (j == Ny) {
            // Ghost slope u_y = beta u_x (adjoint: -beta v_x); its trapezoid
            // antiderivative returns the edge values exactly.
            const double gain = side == Side::forward ? cfg.beta : -cfg.beta;
            for (int i = 0; i <= Nx; ++i) psi[i] += 2.0 * gain / g.hy * r[i];
        }
        const double sign = side == Side::forward ? -1.0 : 1.0;
        for (int i = 1; i < Nx; ++i) out(i, j) = res[i] + sign * psi[i];
    }
    return out;
}

GeneratorMatrix assemble(const Grid2D& g, const FeedbackConfig& cfg, Side side) {
    check_match(g, cfg);
    const int n = g.unknowns();
    GeneratorMatrix m;
    m.entries.resize(n, n);
    m.grid = g;
    m.config = cfg;
    m.variant = side == Side::forward ? Variant::forward : Variant::adjoint;
    StateField e(g);
    for (int k = 0; k < n; ++k) {
        e.values().setZero();
        e.values()[k] = 1.0;
        m.entries.col(k) = apply_impl(e, cfg, side).values();
    }
    return m;
}

}  // namespace

StateField apply_generator(const StateField& u, const FeedbackConfig& cfg) {
    return apply_impl(u, cfg, Side::forward);
}

StateField apply_adjoint(const StateField& v, const FeedbackConfig& cfg) {
    return apply_impl(v, cfg, Side::adjoint);
}

GeneratorMatrix assemble_generator(const Grid2D& g, const FeedbackConfig& cfg) {
    return assemble(g, cfg, Side::forward);
}

GeneratorMatrix assemble_adjoint(const Grid2D& g, const FeedbackConfig& cfg) {
    return assemble(g, cfg, Side::adjoint);
}

Eigen::MatrixXd x_slope(const StateField& u, const FeedbackConfig& cfg) {
    const Grid2D& g = u.grid();
    check_match(g, cfg);
    const std::vector<double> U = to_nodes(u);
    const int s = g.Nx + 1;
    Eigen::MatrixXd d(g.Nx + 1, g.Ny + 1);
    for (int j = 0; j <= g.Ny; ++j) {
        const double* r = U.data() + j * s;
        const double t = left_slope(r, g.hx);
        d(0, j) = t;
        d(g.Nx, j) = cfg.alpha * t;
        for (int i = 1; i < g.Nx; ++i) d(i, j) = (r[i + 1] - r[i - 1]) / (2.0 * g.hx);
    }
    return d;
}

Eigen::MatrixXd nonlocal_y(const StateField& u, const FeedbackConfig& cfg) {
    const Grid2D& g = u.grid();
    check_match(g, cfg);
    const std::vector<double> U = to_nodes(u);
    const int s = g.Nx + 1;
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(g.Nx + 1, g.Ny + 1);
    std::vector<double> dy(s);
    for (int j = 1; j < g.Ny; ++j) {
        for (int i = 0; i <= g.Nx; ++i) dy[i] = (U[(j + 1) * s + i] - U[(j - 1) * s + i]) / (2.0 * g.hy);
        std::vector<double> psi = dx_inv_right(dy, g.hx);
        for (int i = 0; i <= g.Nx; ++i) f(i, j) = psi[i];
    }
    // u_y = 0 on the bottom row; on the top row u_y = beta u_x integrates back to beta u.
    for (int i = 0; i <= g.Nx; ++i) f(i, g.Ny) = cfg.beta * U[g.Ny * s + i];
    return f;
}

Traces boundary_traces(const StateField& u, const FeedbackConfig& cfg) {
    const Grid2D& g = u.grid();
    const Eigen::MatrixXd f = nonlocal_y(u, cfg);
    Traces t;
    t.ux0.resize(g.Ny + 1);
    t.nonlocal0.resize(g.Ny + 1);
    t.u_top.resize(g.Nx + 1);
    for (int j = 0; j <= g.Ny; ++j) {
        t.ux0[j] = (4.0 * u.at(1, j) - u.at(2, j)) / (2.0 * g.hx);
        t.nonlocal0[j] = f(0, j);
    }
    for (int i = 0; i <= g.Nx; ++i) t.u_top[i] = u.at(i, g.Ny);

    std::vector<double> sq(std::max(g.Nx, g.Ny) + 1);
    for (int j = 0; j <= g.Ny; ++j) sq[j] = t.ux0[j] * t.ux0[j];
    t.I_ux0 = trapezoid(sq.data(), g.Ny + 1, g.hy);
    for (int j = 0; j <= g.Ny; ++j) sq[j] = t.nonlocal0[j] * t.nonlocal0[j];
    t.I_nloc = trapezoid(sq.data(), g.Ny + 1, g.hy);
    for (int i = 0; i <= g.Nx; ++i) sq[i] = t.u_top[i] * t.u_top[i];
    t.I_top = trapezoid(sq.data(), g.Nx + 1, g.hx);
    return t;
}

double domain_integral(const Eigen::MatrixXd& nodes, const Grid2D& g) {
    double total = 0.0;
    for (int j = 0; j <= g.Ny; ++j) {
        double row = 0.5 * (nodes(0, j) + nodes(g.Nx, j));
        for (int i = 1; i < g.Nx; ++i) row += nodes(i, j);
        total += (j == 0 || j == g.Ny ? 0.5 : 1.0) * row;
    }
    return total * g.hx * g.hy;
}

}  // namespace kp2stab
