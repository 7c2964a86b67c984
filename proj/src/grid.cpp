#include "kp2stab/grid.hpp"

#include <cmath>
#include <sstream>

#include "kp2stab/error.hpp"

namespace kp2stab {

Grid2D build_grid(double L, int Nx, int Ny) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        std::ostringstream m;
        m << "domain length must be positive and finite, got L=" << L;
        throw ConfigError(m.str());
    }
    if (Nx < 8 || Ny < 8) {
        std::ostringstream m;
        m << "grid too coarse: Nx and Ny must be >= 8, got Nx=" << Nx << " Ny=" << Ny;
        throw ConfigError(m.str());
    }
    Grid2D g;
    g.L = L;
    g.Nx = Nx;
    g.Ny = Ny;
    g.hx = L / Nx;
    g.hy = L / Ny;
    return g;
}

double Grid2D::weight(int /*i*/, int j) const {
    double w = hx * hy;
    if (j == 0 || j == Ny) w *= 0.5;
    return w;
}

Eigen::VectorXd Grid2D::weights() const {
    Eigen::VectorXd w(unknowns());
    for (int j = 0; j <= Ny; ++j)
        for (int i = 1; i < Nx; ++i) w[index(i, j)] = weight(i, j);
    return w;
}

StateField::StateField(const Grid2D& g) : grid_(g), values_(Eigen::VectorXd::Zero(g.unknowns())) {}

StateField::StateField(const Grid2D& g, Eigen::VectorXd values) : grid_(g), values_(std::move(values)) {
    if (values_.size() != g.unknowns()) {
        std::ostringstream m;
        m << "field length " << values_.size() << " does not match grid unknowns " << g.unknowns();
        throw DimensionError(m.str());
    }
}

StateField StateField::sample(const Grid2D& g, const std::function<double(double, double)>& f) {
    StateField u(g);
    for (int j = 0; j <= g.Ny; ++j)
        for (int i = 1; i < g.Nx; ++i) u(i, j) = f(g.x(i), g.y(j));
    return u;
}

double inner_product(const StateField& a, const StateField& b) {
    if (!(a.grid() == b.grid())) throw DimensionError("inner product of fields on different grids");
    const Grid2D& g = a.grid();
    const int m = g.Nx - 1;
    const Eigen::VectorXd& av = a.values();
    const Eigen::VectorXd& bv = b.values();
    double total = 0.0;
    for (int j = 0; j <= g.Ny; ++j) {
        double row = 0.0;
        for (int k = 0; k < m; ++k) row += av[j * m + k] * bv[j * m + k];
        total += (j == 0 || j == g.Ny ? 0.5 : 1.0) * row;
    }
    return total * g.hx * g.hy;
}

double weighted_norm(const StateField& a) { return std::sqrt(inner_product(a, a)); }

double trapezoid(const double* v, int n, double h) {
    if (n < 2) return 0.0;
    double s = 0.5 * (v[0] + v[n - 1]);
    for (int k = 1; k < n - 1; ++k) s += v[k];
    return s * h;
}

}  // namespace kp2stab
