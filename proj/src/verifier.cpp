#include "hardcore/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "hardcore/lambert.hpp"
#include "hardcore/rates.hpp"

namespace hardcore {

namespace {

constexpr double kTol = 1e-9;

// Neumaier-compensated sum: the margin expressions cancel several near-equal
// terms around x = 2 and the double root, and plain summation there would
// put rounding noise on the same scale as the margin itself.
double sum_terms(std::initializer_list<double> terms) {
  double s = 0.0, comp = 0.0;
  for (double t : terms) {
    double v = s + t;
    if (std::abs(s) >= std::abs(t))
      comp += (s - v) + t;
    else
      comp += (t - v) + s;
    s = v;
  }
  return s + comp;
}

void validate_certification_lambda(double lambda) {
  if (std::isnan(lambda) || lambda < 0.0 || lambda > 20.0)
    throw std::domain_error("grid certification expects lambda in [0, 20]");
}

std::string describe_grid(const GridSpec& s) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "log[%g,%g]x%d+lin[%g,%g]x%d%s", s.log_min,
                s.log_max, s.log_points, s.lin_min, s.lin_max, s.lin_points,
                s.include_special ? "+special" : "");
  return buf;
}

struct WorstTracker {
  double margin = std::numeric_limits<double>::infinity();
  double x = 0.0;
  void consider(double m, double at) {
    if (std::isnan(m)) m = -std::numeric_limits<double>::infinity();
    if (m < margin) {
      margin = m;
      x = at;
    }
  }
};

LemmaCheckReport make_report(double lambda, const char* claim,
                             const GridSpec& spec, const WorstTracker& w) {
  LemmaCheckReport rep;
  rep.lambda = lambda;
  rep.claim = claim;
  rep.grid_spec = describe_grid(spec);
  rep.worst_margin = w.margin;
  rep.worst_x = w.x;
  rep.tolerance = kTol;
  rep.passed = w.margin >= -kTol;
  return rep;
}

// Evenly spread sample points for derivative cross-checks, kept away from
// the expansion seam at x = 2 and from the endpoints where finite
// differences lose accuracy.
std::vector<double> pick_samples(const std::vector<double>& grid, double x_lo,
                                 double x_hi, int count) {
  std::vector<double> cand;
  for (double x : grid)
    if (x >= x_lo && x <= x_hi && std::abs(x - 2.0) >= 0.5) cand.push_back(x);
  std::vector<double> out;
  if (cand.empty()) return out;
  for (int i = 0; i < count; ++i) {
    std::size_t j =
        count <= 1 ? 0 : i * (cand.size() - 1) / static_cast<std::size_t>(count - 1);
    out.push_back(cand[j]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

[[noreturn]] void derivative_mismatch(const char* where, double lambda, double x,
                                      double closed, double fd) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s: closed-form derivative %.17g disagrees with finite "
                "difference %.17g at lambda=%.17g, x=%.17g",
                where, closed, fd, lambda, x);
  throw std::logic_error(buf);
}

// Margin of the differential inequality e^a + lambda e^b >= 1 written as
// expm1(a) + lambda e^b >= 0; near-cancellation at large x stays accurate.
double inequality_value(double lambda, double x, double g, double gd,
                        double* scale_out) {
  double a = sum_terms({-x * gd, -g});
  double b = sum_terms({x * gd, -x * x * gd, -x * g, -g});
  double t1 = std::expm1(a);
  double t2 = lambda * std::exp(b);
  if (scale_out) *scale_out = std::abs(t1) + t2 + 1.0;
  return t1 + t2;
}

}  // namespace

std::vector<double> build_grid(const GridSpec& s, double lambda) {
  if (!(s.log_min > 0.0) || !(s.log_max >= s.log_min) || s.log_points < 2 ||
      !(s.lin_min >= 0.0) || !(s.lin_max >= s.lin_min) || s.lin_points < 2)
    throw std::invalid_argument("malformed grid specification");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(s.log_points) + s.lin_points + 3);
  double la = std::log(s.log_min), lb = std::log(s.log_max);
  for (int i = 0; i < s.log_points; ++i)
    g.push_back(std::exp(la + (lb - la) * i / (s.log_points - 1)));
  for (int i = 0; i < s.lin_points; ++i)
    g.push_back(s.lin_min +
                (s.lin_max - s.lin_min) * i / static_cast<double>(s.lin_points - 1));
  if (s.include_special) {
    g.push_back(2.0);
    if (lambda > 0.0) {
      g.push_back(lambert_w(2.0 * lambda) / lambda);
      double image = 2.0 * std::exp(2.0 * lambda);  // x = 2 seen from r-mode
      if (std::isfinite(image)) g.push_back(image);
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

LemmaCheckReport check_monotone(double lambda, const GridSpec& spec) {
  validate_certification_lambda(lambda);
  auto grid = build_grid(spec, lambda);
  double c = c_lambda(lambda);
  WorstTracker worst;
  for (double x : grid) {
    double w = lambert_w(lambda * x);
    double t1 = c * x, t2 = 0.5 * x * w * w, t3 = 2.0 * w;
    double m = sum_terms({t1, -t2, -t3});
    double scale = std::abs(t1) + t2 + t3;
    worst.consider(-m / (1.0 + scale), x);
  }
  for (double x : pick_samples(grid, 1e-3, 1e7, 20)) {
    double h = 6e-6 * std::max(1.0, x);
    double cf = f_lambda_deriv(lambda, x);
    double fd = (f_lambda(lambda, x + h) - f_lambda(lambda, x - h)) / (2.0 * h);
    double rel = std::abs(fd - cf) /
                 std::max({std::abs(cf), std::abs(fd), 1e-12});
    if (rel > 1e-6) derivative_mismatch("check_monotone", lambda, x, cf, fd);
  }
  return make_report(lambda, "monotone", spec, worst);
}

LemmaCheckReport check_convex(double lambda, const GridSpec& spec) {
  validate_certification_lambda(lambda);
  auto grid = build_grid(spec, lambda);
  double c = c_lambda(lambda);
  WorstTracker worst;
  for (double x : grid) {
    double w = lambert_w(lambda * x);
    double t = x - 2.0;
    double a = x * x * w * w * w;
    double b = (8.0 * x - 4.0) * w * w;
    double d = 4.0 * x * w;
    double e = 2.0 * x * x * (w + 1.0) * c;
    double k = sum_terms({a, b, d, -e});
    double scale = std::abs(t) * (std::abs(a) + std::abs(b) + d + e);
    worst.consider(t * k / (1.0 + scale), x);
  }
  for (double x : pick_samples(grid, 1e-3, 1e7, 20)) {
    double w = lambert_w(lambda * x);
    double t = x - 2.0;
    double a = x * x * w * w * w;
    double b = (8.0 * x - 4.0) * w * w;
    double d = 4.0 * x * w;
    double e = 2.0 * x * x * (w + 1.0) * c;
    double k = sum_terms({a, b, d, -e});
    double cf = k / (t * t * t * x * x * (w + 1.0));
    // Truncation of the second difference grows like h^2 lambda^2 relative
    // to f'' (worst in the lambda = 20, x ~ 1e-3 corner); rounding noise
    // ~eps |f| / h^2 dominates instead where f'' is small, so the noise
    // floor of the scheme is added to the tolerance explicitly.
    double h = 4e-5 * std::max(1.0, x);
    double fm = f_lambda(lambda, x - h);
    double f0 = f_lambda(lambda, x);
    double fp = f_lambda(lambda, x + h);
    double fd = (fp - 2.0 * f0 + fm) / (h * h);
    double denom = std::max({std::abs(cf), std::abs(fd), 1e-12});
    double noise =
        4e-16 * (std::abs(fp) + 2.0 * std::abs(f0) + std::abs(fm)) / (h * h);
    double rel = std::abs(fd - cf) / denom;
    if (rel > 5e-6 + 10.0 * noise / denom)
      derivative_mismatch("check_convex", lambda, x, cf, fd);
  }
  return make_report(lambda, "convex", spec, worst);
}

LemmaCheckReport check_inequality(double lambda, InequalityMode mode,
                                  const GridSpec& spec) {
  validate_certification_lambda(lambda);
  auto grid = build_grid(spec, lambda);
  WorstTracker worst;
  if (mode == InequalityMode::kDirect) {
    for (double x : grid) {
      double g = f_lambda(lambda, x);
      double gd = f_lambda_deriv(lambda, x);
      double scale = 0.0;
      double value = inequality_value(lambda, x, g, gd, &scale);
      worst.consider(value / (1.0 + scale), x);
    }
    return make_report(lambda, "inequality-direct", spec, worst);
  }
  double c = c_lambda(lambda);
  for (double x : grid) {
    // scaled surrogate e^{-lambda x} r(x); same sign, no overflow at the
    // far end of the grid
    double lx = lambda * x;
    double e = std::exp(-lx);
    double t1 = lambda * (4.0 + (2.0 + lx) * (2.0 + lx)) * e;
    double t2 = lambda * lambda * x * x;
    double t3 = 2.0 * (2.0 + lambda * e) * c;
    double value = sum_terms({t1, t2, -t3});
    double scale = t1 + t2 + t3;
    worst.consider(value / (1.0 + scale), x);
  }
  return make_report(lambda, "inequality-r", spec, worst);
}

std::vector<LemmaCheckReport> certify_lambda(double lambda, const GridSpec& spec) {
  return {check_monotone(lambda, spec), check_convex(lambda, spec),
          check_inequality(lambda, InequalityMode::kDirect, spec),
          check_inequality(lambda, InequalityMode::kRFunction, spec)};
}

double estimate_lambda_max(double resolution, const GridSpec& spec) {
  if (!(resolution > 0.0) || resolution > 0.05)
    throw std::invalid_argument("resolution must lie in (0, 0.05]");
  auto pass = [&spec](double lam) {
    return check_monotone(lam, spec).passed && check_convex(lam, spec).passed &&
           check_inequality(lam, InequalityMode::kDirect, spec).passed;
  };
  if (!pass(1.0))
    throw std::runtime_error(
        "certification fails at lambda = 1; the checks themselves are broken");
  double lo = 1.0, hi = 20.0;
  if (pass(hi)) return hi;
  while (hi - lo > resolution) {
    double mid = 0.5 * (lo + hi);
    (pass(mid) ? lo : hi) = mid;
  }
  return lo;
}

double edgeless_crossover() {
  // log(1 + lambda) against the degree-0 rate (W(2 lambda)^2 + 2 W(2 lambda))/4
  auto gap = [](double lam) {
    double u = lambert_w(2.0 * lam);
    return std::log1p(lam) - 0.25 * (u * u + 2.0 * u);
  };
  double lo = 1.0, hi = 100.0;
  if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0))
    throw std::runtime_error("edgeless crossover: no sign change in [1, 100]");
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

LemmaCheckReport hypothesis_impl(const std::function<double(double)>& g,
                                 const std::function<double(double)>& gd,
                                 double lambda, const GridSpec& spec,
                                 bool check_consistency, double deriv_noise_unit) {
  if (std::isnan(lambda) || lambda < 0.0)
    throw std::domain_error("check_hypothesis requires lambda >= 0");
  auto grid = build_grid(spec, lambda);
  if (check_consistency) {
    for (double x : pick_samples(grid, 1e-3, 1e6, 20)) {
      double h = 6e-6 * std::max(1.0, x);
      double fd = (g(x + h) - g(x - h)) / (2.0 * h);
      double cf = gd(x);
      double rel = std::abs(fd - cf) /
                   std::max({std::abs(cf), std::abs(fd), 1e-8});
      if (rel > 1e-5) derivative_mismatch("check_hypothesis", lambda, x, cf, fd);
    }
  }
  WorstTracker worst;
  for (double x : grid) {
    if (x <= 0.0) continue;  // candidates may have unbounded slope at 0
    double gx = g(x);
    double gdx = gd(x);
    double scale_g = std::max(std::abs(gx), 1.0);
    // rounding-noise floor of the central-difference slope at this point
    // (zero when a closed-form derivative was supplied)
    double noise_d = deriv_noise_unit * scale_g / std::max(1.0, x);

    // non-increasing
    {
      double denom = 1.0 + std::abs(gdx);
      if (std::abs(gdx) < 20.0 * noise_d) denom += 10.0 * noise_d / kTol;
      worst.consider(-gdx / denom, x);
    }

    // convexity by second central differences
    {
      double h = std::min(1.2e-4 * std::max(1.0, x), 0.5 * x);
      double sd = (g(x + h) - 2.0 * gx + g(x - h)) / (h * h);
      double noise = 4e-16 * scale_g / (h * h);
      double denom = 1.0 + std::abs(sd);
      if (std::abs(sd) < 20.0 * noise) denom += 10.0 * noise / kTol;
      worst.consider(sd / denom, x);
    }

    // the differential inequality itself
    {
      double scale = 0.0;
      double value = inequality_value(lambda, x, gx, gdx, &scale);
      double noise = noise_d * (x + x * x) * scale;
      double denom = 1.0 + scale;
      if (std::abs(value) < 20.0 * noise) denom += 10.0 * noise / kTol;
      worst.consider(value / denom, x);
    }
  }
  return make_report(lambda, "hypothesis", spec, worst);
}

}  // namespace

LemmaCheckReport check_hypothesis(const std::function<double(double)>& g,
                                  const std::function<double(double)>& g_deriv,
                                  double lambda, const GridSpec& spec) {
  return hypothesis_impl(g, g_deriv, lambda, spec, true, 0.0);
}

LemmaCheckReport check_hypothesis_fd(const std::function<double(double)>& g,
                                     double lambda, const GridSpec& spec) {
  auto fd = [g](double x) {
    double h = 6e-6 * std::max(1.0, x);
    if (h >= x) h = 0.5 * x;
    return (g(x + h) - g(x - h)) / (2.0 * h);
  };
  // central-difference slope carries ~eps/h of rounding noise; margins are
  // normalized against it so noise never decides a verdict
  return hypothesis_impl(g, fd, lambda, spec, false, 2e-16 / 6e-6);
}

std::string format_report_header() {
  return "lambda\tclaim\tworst_x\tworst_margin\tpassed";
}

std::string format_report_row(const LemmaCheckReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.12g\t%s\t%.12g\t%.12g\t%s", r.lambda,
                r.claim.c_str(), r.worst_x, r.worst_margin,
                r.passed ? "true" : "false");
  return buf;
}

}  // namespace hardcore
