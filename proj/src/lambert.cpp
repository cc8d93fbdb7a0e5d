#include "hardcore/lambert.hpp"

#include <cmath>
#include <stdexcept>

namespace hardcore {

// Halley iteration for w e^w = x on the principal branch, x >= 0.
// Seed: log1p(x) for x < e (exact at 0, good to ~10% throughout), and
// log x - log log x for x >= e (the leading asymptotic). Each step solves
// the second-order model; 4-5 steps reach the 1e-15 stopping width from
// either seed, with 50 as a safety cap.
double lambert_w(double x) {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("lambert_w requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = x < std::exp(1.0) ? std::log1p(x) : std::log(x) - std::log(std::log(x));
  for (int i = 0; i < 50; ++i) {
    double ew = std::exp(w);
    double r = w * ew - x;
    double denom = ew * (w + 1.0) - (w + 2.0) * r / (2.0 * w + 2.0);
    double step = r / denom;
    w -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double lambert_w_deriv(double x) {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("lambert_w_deriv requires x >= 0");
  if (x == 0.0) return 1.0;
  double w = lambert_w(x);
  return w / (x * (1.0 + w));
}

}  // namespace hardcore
