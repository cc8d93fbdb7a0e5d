#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hardcore {

/// Evaluation grid for the certification routines. The default covers
/// [1e-6, 1e8] log-spaced plus a linear sweep of [0, 10] and a few
/// structurally relevant points (the removable singularity at 2, the
/// stationary point W(2 lambda)/lambda, and 2 e^{2 lambda} where the
/// inequality is tightest for small lambda).
struct GridSpec {
  double log_min = 1e-6;
  double log_max = 1e8;
  int log_points = 2000;
  double lin_min = 0.0;
  double lin_max = 10.0;
  int lin_points = 200;
  bool include_special = true;
};

/// Sorted, deduplicated evaluation points; special points depend on lambda.
std::vector<double> build_grid(const GridSpec& spec, double lambda);

/// One certified claim: the worst normalized margin over the grid, where it
/// occurred, and whether it clears -tolerance. Margins are normalized by the
/// magnitude of the terms entering the comparison, so a margin of -1e-16 is
/// rounding noise, not a counterexample.
struct LemmaCheckReport {
  double lambda = 0.0;
  std::string claim;      // monotone | convex | inequality-direct |
                          // inequality-r | hypothesis
  std::string grid_spec;  // human-readable description of the grid used
  double worst_margin = 0.0;
  double worst_x = 0.0;
  bool passed = false;
  double tolerance = 1e-9;
};

/// Which certificate of the pointwise inequality to evaluate. kDirect
/// checks the differential inequality itself,
///   e^{-x f' - f} + lambda e^{(x - x^2) f' - (x + 1) f} >= 1,
/// computed in an expm1 form that keeps the near-equality region at large x
/// accurate. kRFunction checks the sufficient surrogate
///   r(x) = lambda (4 + (2 + lambda x)^2 + lambda x^2 e^{lambda x})
///          - 2 (2 e^{lambda x} + lambda) c(lambda) >= 0,
/// evaluated in the overflow-safe scaled form e^{-lambda x} r(x); its grid
/// coordinate x corresponds to x e^{lambda x} of the direct mode.
enum class InequalityMode { kDirect, kRFunction };

/// f_lambda(lambda, .) is nonincreasing on [0, inf): checks the numerator
/// m(x) = c x - x W(lambda x)^2 / 2 - 2 W(lambda x) of the closed-form
/// derivative m / (x (x-2)^2) to be <= 0 on the grid, and cross-checks the
/// closed-form derivative against central finite differences at a sample
/// of points (throws std::logic_error on disagreement).
LemmaCheckReport check_monotone(double lambda, const GridSpec& spec = {});

/// f_lambda(lambda, .) is convex: checks (x - 2) k(x) >= 0 where k is the
/// numerator of f'' = k / ((x-2)^3 x^2 (W(lambda x) + 1)) (the denominator
/// changes sign with x - 2 as well, so this certifies f'' >= 0), with the
/// closed form for f'' cross-checked against second central differences.
LemmaCheckReport check_convex(double lambda, const GridSpec& spec = {});

/// The pointwise inequality behind the occupancy bound.
LemmaCheckReport check_inequality(double lambda, InequalityMode mode,
                                  const GridSpec& spec = {});

/// All four reports for one lambda: monotone, convex, inequality-direct,
/// inequality-r.
std::vector<LemmaCheckReport> certify_lambda(double lambda,
                                             const GridSpec& spec = {});

/// Largest lambda in [1, 20] (to the given resolution, via bisection) for
/// which monotonicity, convexity and the direct inequality all pass on the
/// grid. Throws std::runtime_error if lambda = 1 already fails.
double estimate_lambda_max(double resolution = 1e-3, const GridSpec& spec = {});

/// The lambda where the degree-2 rate c(lambda)/2 crosses the edgeless rate
/// log(1 + lambda): the unique root of
///   log(1 + lambda) = (W(2 lambda)^2 + 2 W(2 lambda)) / 4
/// in [1, 100], found by bisection to ~1e-10.
double edgeless_crossover();

/// Checks an arbitrary candidate rate g against the three hypotheses under
/// which the induction closes: g' <= 0, convexity (second differences), and
/// the differential inequality
///   e^{-x g' - g} + lambda e^{(x - x^2) g' - (x + 1) g} >= 1.
/// g_deriv must be g's derivative; it is verified against central
/// differences at sample points (std::logic_error on disagreement, naming
/// the worst point). Margins from finite differences are normalized by the
/// difference scheme's noise floor, so a flat-zero candidate passes
/// cleanly. The grid's x = 0 endpoint is skipped: candidates may have an
/// unbounded one-sided slope there (the classical rate does) while the
/// inequality still holds in the limit.
LemmaCheckReport check_hypothesis(const std::function<double(double)>& g,
                                  const std::function<double(double)>& g_deriv,
                                  double lambda, const GridSpec& spec = {});

/// Same, with g' taken by central differences (no consistency check).
LemmaCheckReport check_hypothesis_fd(const std::function<double(double)>& g,
                                     double lambda, const GridSpec& spec = {});

// ---------------------------------------------------------------------------
// Report output: one TSV row per report,
//   lambda claim worst_x worst_margin passed

std::string format_report_row(const LemmaCheckReport& r);
std::string format_report_header();

}  // namespace hardcore
