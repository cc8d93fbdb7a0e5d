#pragma once

namespace hardcore {

/// Principal branch of the Lambert W function on [0, inf): the unique
/// w >= 0 with w e^w = x. Halley iteration from a branch-dependent seed;
/// converges to ~1 ulp in a handful of steps. Throws std::domain_error for
/// negative or NaN input.
double lambert_w(double x);

/// dW/dx = W(x) / (x (1 + W(x))) for x > 0, and 1 at x = 0.
double lambert_w_deriv(double x);

}  // namespace hardcore
