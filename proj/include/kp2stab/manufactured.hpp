#pragma once

#include <cstdint>
#include <vector>

#include "kp2stab/operators.hpp"

namespace kp2stab {

// Smooth field satisfying every continuous boundary condition of the
// forward (or adjoint) problem:
//   u = X(x) Y(y) + s beta Y(L) X'(x) W(y),
// X = x^2 (L-x)^2 q(x) with q chosen so the x = L / x = 0 slope feedback holds,
// Y a cosine series (Y' = 0 at both edges), W = (y^2 - L^2) / (2L), and
// s = +1 forward, -1 adjoint.
StateField feedback_manifold_field(const Grid2D& g, const FeedbackConfig& cfg, const std::vector<double>& ycoef,
                                   Variant side);

// Random smooth field supported in [0.2L, 0.8L]^2.
StateField interior_bump_field(const Grid2D& g, std::uint64_t seed);

// Uniform double in [-1, 1) from raw 64-bit engine output.
double unit_symmetric(std::uint64_t raw);

}  // namespace kp2stab
