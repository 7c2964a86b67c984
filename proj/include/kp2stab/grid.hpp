#pragma once

#include <Eigen/Dense>
#include <functional>

namespace kp2stab {

// Uniform (Nx+1) x (Ny+1) node lattice on (0,L)^2. Columns x = 0 and x = L
// carry the homogeneous Dirichlet condition and hold no unknowns; every row
// in y, including y = 0 and y = L, is active.
struct Grid2D {
    double L = 0.0;
    int Nx = 0;
    int Ny = 0;
    double hx = 0.0;
    double hy = 0.0;

    int unknowns() const { return (Nx - 1) * (Ny + 1); }
    // i in 1..Nx-1, j in 0..Ny
    int index(int i, int j) const { return j * (Nx - 1) + (i - 1); }
    double x(int i) const { return i * hx; }
    double y(int j) const { return j * hy; }
    // Trapezoid in y (half weight on the two edge rows), full weight in x.
    double weight(int i, int j) const;
    Eigen::VectorXd weights() const;

    bool operator==(const Grid2D& o) const {
        return L == o.L && Nx == o.Nx && Ny == o.Ny;
    }
};

Grid2D build_grid(double L, int Nx, int Ny);

// Solution values on the active unknowns of a grid.
class StateField {
public:
    explicit StateField(const Grid2D& g);
    StateField(const Grid2D& g, Eigen::VectorXd values);
    static StateField sample(const Grid2D& g, const std::function<double(double, double)>& f);

    const Grid2D& grid() const { return grid_; }
    const Eigen::VectorXd& values() const { return values_; }
    Eigen::VectorXd& values() { return values_; }

    // Node value with the Dirichlet columns reported as zero.
    double at(int i, int j) const {
        if (i <= 0 || i >= grid_.Nx) return 0.0;
        return values_[grid_.index(i, j)];
    }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }

private:
    Grid2D grid_;
    Eigen::VectorXd values_;
};

double inner_product(const StateField& a, const StateField& b);
double weighted_norm(const StateField& a);

// Composite trapezoid over equispaced samples with spacing h.
double trapezoid(const double* v, int n, double h);

}  // namespace kp2stab
