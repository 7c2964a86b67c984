#include "kp2stab/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace kp2stab {

double unit_symmetric(std::uint64_t raw) { return 2.0 * (static_cast<double>(raw >> 11) * 0x1.0p-53) - 1.0; }

StateField feedback_manifold_field(const Grid2D& g, const FeedbackConfig& cfg, const std::vector<double>& ycoef,
                                   Variant side) {
    const double L = g.L, a = cfg.alpha, b = cfg.beta;
    const double pi = std::numbers::pi;
    const bool fwd = side == Variant::forward;
    // q(0), q(L): forward needs X''(L) = a X''(0), adjoint X''(0) = a X''(L).
    const double q0 = fwd ? 1.0 : a;
    const double q1 = fwd ? a : 1.0;
    const double dq = (q1 - q0) / L;
    const double s = fwd ? 1.0 : -1.0;
    double YL = 0.0;
    for (std::size_t m = 0; m < ycoef.size(); ++m) YL += ycoef[m] * (m % 2 == 0 ? 1.0 : -1.0);

    return StateField::sample(g, [&](double x, double y) {
        const double p = x * x * (L - x) * (L - x);
        const double dp = 2.0 * x * (L - x) * (L - 2.0 * x);
        const double q = q0 + dq * x;
        const double X = p * q;
        const double dX = dp * q + p * dq;
        double Y = 0.0;
        for (std::size_t m = 0; m < ycoef.size(); ++m) Y += ycoef[m] * std::cos(m * pi * y / L);
        const double W = (y * y - L * L) / (2.0 * L);
        return X * Y + s * b * YL * dX * W;
    });
}

StateField interior_bump_field(const Grid2D& g, std::uint64_t seed) {
    const double L = g.L, lo = 0.2 * L, hi = 0.8 * L;
    const double pi = std::numbers::pi;
    std::mt19937_64 eng(seed);
    double c[3][3];
    for (auto& row : c)
        for (double& v : row) v = unit_symmetric(eng());
    auto bump = [&](double s) {
        if (s <= lo || s >= hi) return 0.0;
        const double r = std::sin(pi * (s - lo) / (hi - lo));
        return r * r * r * r;
    };
    return StateField::sample(g, [&](double x, double y) {
        const double env = bump(x) * bump(y);
        if (env == 0.0) return 0.0;
        double s = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int m = 0; m < 3; ++m) s += c[k][m] * std::cos(k * pi * x / L) * std::cos(m * pi * y / L);
        return env * s;
    });
}

}  // namespace kp2stab
