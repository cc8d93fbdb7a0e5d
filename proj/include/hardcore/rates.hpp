#pragma once

#include <functional>
#include <vector>

namespace hardcore {

/// One evaluation of a rate function: nats per vertex at fugacity lambda
/// and average degree d. Values are finite for all finite inputs; removable
/// singularities are filled by their limits.
struct RatePoint {
  double lambda = 0.0;
  double d = 0.0;
  double value = 0.0;
};

/// c(lambda) = W(2 lambda) + W(2 lambda)^2 / 2, the free-energy rate of the
/// occupancy bound at degree 2. Nonnegative, increasing, c(0) = 0.
double c_lambda(double lambda);

/// Lower bound rate for log Z per vertex at average degree x:
///   f_lambda(lambda, x) = (W(lambda x) + W(lambda x)^2 / 2 - c(lambda)) / (x - 2).
/// Defined for x >= 0 (the value at x = 0 is c(lambda) / 2); within
/// |x - 2| < 1e-4 a Taylor expansion around the removable singularity is
/// used, continuous with the outer branch to well below 1e-10. At
/// lambda = 0 the function is identically 0.
double f_lambda(double lambda, double x);

/// d/dx f_lambda(lambda, x), closed form:
///   (c x - x W(lambda x)^2 / 2 - 2 W(lambda x)) / (x (x - 2)^2),
/// with the same expansion window near x = 2 and the limit
/// (c(lambda) - 2 lambda) / 4 at x = 0.
double f_lambda_deriv(double lambda, double x);

/// Upper bound rate for log Z per vertex at degree d > 0:
///   (W(lambda d)^2 + 2 W(lambda d)) / (2 d)   if log lambda <= d,
///   1 - d/2 + log lambda                      otherwise.
/// The branches agree at log lambda = d. Throws std::domain_error for d <= 0.
double upper_rate_phi(double lambda, double d);

/// Classical lower rate at fugacity 1: (d log d - d + 1) / (d - 1)^2 with
/// the limit 1/2 filled near d = 1 by expansion; value 1 at d = 0.
double shearer_rate(double d);
double shearer_rate_deriv(double d);

/// Sharpness scale eta(d) = 2 W(e d / 2) / d for d >= 2: the occupancy
/// upper bound at fugacity 1 is attained at independent-set density eta/2.
/// Satisfies d/2 = (1/eta) log(e/eta). Throws std::domain_error for d < 2.
double shearer_sharpness_eta(double d);

/// Conjectured optimal occupancy rate (W(lambda d) - W(2 lambda)) / (d - 2)
/// for lambda > 0, d >= 0, with the removable singularity at d = 2 filled
/// by its limit W(2 lambda) / (2 (1 + W(2 lambda))).
double conjecture_rhs(double lambda, double d);

/// Evaluates a rate over a list of degrees (plot-table helper).
std::vector<RatePoint> tabulate_rate(
    const std::function<double(double, double)>& rate, double lambda,
    const std::vector<double>& degrees);

}  // namespace hardcore
