#include "hardcore/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "hardcore/lambert.hpp"

namespace hardcore {

namespace {

// Half-width of the Taylor windows around the removable singularities.
// Chosen so the series and the outer branch agree far below 1e-10.
constexpr double kWindow = 1e-4;

// Derivatives at x = 2 of h(x) = W(lambda x) + W(lambda x)^2 / 2, expressed
// through u = W(2 lambda). Since h'(x) = W(lambda x)/x, repeated
// differentiation with W'(y) = W(y)/(y(1+W(y))) gives rational functions
// of u alone.
struct SeamCoeffs {
  double h1, h2, h3, h4;
};

SeamCoeffs seam_coeffs(double u) {
  double p = 1.0 + u;
  double p3 = p * p * p;
  double p5 = p3 * p * p;
  return {
      u / 2.0,
      -u * u / (4.0 * p),
      u * u * u * (3.0 + 2.0 * u) / (8.0 * p3),
      -u * u * u * u * (16.0 + 19.0 * u + 6.0 * u * u) / (16.0 * p5),
  };
}

void require_nonnegative(double v, const char* what) {
  if (std::isnan(v) || v < 0.0) throw std::domain_error(what);
}

}  // namespace

double c_lambda(double lambda) {
  require_nonnegative(lambda, "c_lambda requires lambda >= 0");
  double u = lambert_w(2.0 * lambda);
  return u + 0.5 * u * u;
}

double f_lambda(double lambda, double x) {
  require_nonnegative(lambda, "f_lambda requires lambda >= 0");
  require_nonnegative(x, "f_lambda requires x >= 0");
  if (lambda == 0.0) return 0.0;
  double t = x - 2.0;
  if (std::abs(t) < kWindow) {
    auto [h1, h2, h3, h4] = seam_coeffs(lambert_w(2.0 * lambda));
    return h1 + t * (h2 / 2.0 + t * (h3 / 6.0 + t * (h4 / 24.0)));
  }
  double w = lambert_w(lambda * x);
  return (w + 0.5 * w * w - c_lambda(lambda)) / t;
}

double f_lambda_deriv(double lambda, double x) {
  require_nonnegative(lambda, "f_lambda_deriv requires lambda >= 0");
  require_nonnegative(x, "f_lambda_deriv requires x >= 0");
  if (lambda == 0.0) return 0.0;
  double t = x - 2.0;
  if (std::abs(t) < kWindow) {
    auto [h1, h2, h3, h4] = seam_coeffs(lambert_w(2.0 * lambda));
    (void)h1;
    return h2 / 2.0 + t * (h3 / 3.0 + t * (h4 / 8.0));
  }
  double c = c_lambda(lambda);
  if (x == 0.0) return (c - 2.0 * lambda) / 4.0;
  double w = lambert_w(lambda * x);
  double m = c * x - 0.5 * x * w * w - 2.0 * w;
  return m / (x * t * t);
}

double upper_rate_phi(double lambda, double d) {
  require_nonnegative(lambda, "upper_rate_phi requires lambda >= 0");
  if (std::isnan(d) || d <= 0.0)
    throw std::domain_error("upper_rate_phi requires d > 0");
  if (lambda == 0.0) return 0.0;
  double ll = std::log(lambda);
  if (ll <= d) {
    double w = lambert_w(lambda * d);
    return (w * w + 2.0 * w) / (2.0 * d);
  }
  return 1.0 - d / 2.0 + ll;
}

double shearer_rate(double d) {
  require_nonnegative(d, "shearer_rate requires d >= 0");
  double t = d - 1.0;
  if (std::abs(t) < kWindow) {
    // (d log d - d + 1)/(d-1)^2 = sum_{k>=0} (-t)^k / ((k+1)(k+2)) at d = 1+t
    return 0.5 + t * (-1.0 / 6.0 + t * (1.0 / 12.0 + t * (-1.0 / 20.0)));
  }
  if (d == 0.0) return 1.0;
  return (d * std::log(d) - d + 1.0) / (t * t);
}

double shearer_rate_deriv(double d) {
  require_nonnegative(d, "shearer_rate_deriv requires d >= 0");
  double t = d - 1.0;
  if (std::abs(t) < kWindow) {
    return -1.0 / 6.0 + t * (1.0 / 6.0 - t * (3.0 / 20.0));
  }
  // unbounded (-> -inf) as d -> 0; the log below handles that naturally
  double l = std::log(d);
  return (l * t - 2.0 * (d * l - d + 1.0)) / (t * t * t);
}

double shearer_sharpness_eta(double d) {
  if (std::isnan(d) || d < 2.0)
    throw std::domain_error("shearer_sharpness_eta requires d >= 2");
  return 2.0 * lambert_w(std::exp(1.0) * d / 2.0) / d;
}

double conjecture_rhs(double lambda, double d) {
  if (std::isnan(lambda) || lambda <= 0.0)
    throw std::domain_error("conjecture_rhs requires lambda > 0");
  require_nonnegative(d, "conjecture_rhs requires d >= 0");
  double u = lambert_w(2.0 * lambda);
  double t = d - 2.0;
  if (std::abs(t) < kWindow) {
    // Taylor coefficients of d -> W(lambda d) at d = 2, through u
    double p = 1.0 + u;
    double p3 = p * p * p;
    double p5 = p3 * p * p;
    double g1 = u / (2.0 * p);
    double g2 = -u * u * (2.0 + u) / (4.0 * p3);
    double g3 = u * u * u * (9.0 + 8.0 * u + 2.0 * u * u) / (8.0 * p5);
    return g1 + t * (g2 / 2.0 + t * (g3 / 6.0));
  }
  return (lambert_w(lambda * d) - u) / t;
}

std::vector<RatePoint> tabulate_rate(
    const std::function<double(double, double)>& rate, double lambda,
    const std::vector<double>& degrees) {
  std::vector<RatePoint> out;
  out.reserve(degrees.size());
  for (double d : degrees) out.push_back({lambda, d, rate(lambda, d)});
  return out;
}

}  // namespace hardcore
