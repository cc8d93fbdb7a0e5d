#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hardcore/lambert.hpp"
#include "hardcore/rates.hpp"

using namespace hardcore;

// Reference values below were computed independently with mpmath at 30
// digits and frozen.

TEST_CASE("degree-2 rate c") {
  CHECK(c_lambda(0.0) == 0.0);
  CHECK(std::abs(c_lambda(1.0) - 1.2160735730457639) <= 1e-15);
  CHECK(std::abs(c_lambda(0.5) - 0.7279690463382021) <= 1e-15);
  CHECK(std::abs(c_lambda(20.0) - 6.3332017134215949) <= 1e-14);
  double prev = -1.0;
  for (double l = 0.0; l <= 4.0; l += 0.1) {
    CHECK(c_lambda(l) > prev);
    prev = c_lambda(l);
  }
}

TEST_CASE("lower rate spot values") {
  CHECK(std::abs(f_lambda(1.0, 0.0) - 0.60803678652288196) <= 1e-15);
  CHECK(std::abs(f_lambda(1.0, 0.5) - 0.53498770665466784) <= 1e-15);
  CHECK(std::abs(f_lambda(1.0, 2.0) - 0.42630275100686275) <= 1e-15);
  CHECK(std::abs(f_lambda(1.0, 3.0) - 0.38498966578058178) <= 1e-15);
  CHECK(std::abs(f_lambda(1.0, 100.0) - 0.080620431537392844) <= 1e-15);
  CHECK(std::abs(f_lambda(0.5, 3.0) - 0.26132966677713892) <= 1e-15);
  for (double x : {0.0, 0.3, 2.0, 7.0, 1e5}) CHECK(f_lambda(0.0, x) == 0.0);
}

TEST_CASE("lower rate is smooth through the expansion seam") {
  // a branch jump at the window edge would show up as a secant/derivative
  // mismatch far above this threshold
  for (double lam : {0.25, 1.0, 3.0, 11.0}) {
    for (double x0 : {2.0 - 1e-4, 2.0 + 1e-4}) {
      double h = 2e-5;
      double secant = (f_lambda(lam, x0 + h) - f_lambda(lam, x0 - h)) / (2.0 * h);
      double deriv = f_lambda_deriv(lam, x0);
      CHECK(std::abs(secant - deriv) <= 1e-6 * std::max(1.0, std::abs(deriv)));
    }
    // and the window value agrees with the closed form just outside it to
    // second order
    double a = 2.0 + 0.9e-4, b = 2.0 + 1.1e-4;
    double predicted = f_lambda(lam, a) +
                       f_lambda_deriv(lam, 0.5 * (a + b)) * (b - a);
    CHECK(std::abs(f_lambda(lam, b) - predicted) <= 1e-10);
  }
}

TEST_CASE("lower rate derivative") {
  CHECK(std::abs(f_lambda_deriv(1.0, 0.0) -
                 (1.2160735730457639 - 2.0) / 4.0) <= 1e-14);
  for (double lam : {0.5, 1.0, 2.0}) {
    for (double x : {0.4, 1.0, 3.5, 30.0, 1e4}) {
      double h = 1e-6 * std::max(1.0, x);
      double fd = (f_lambda(lam, x + h) - f_lambda(lam, x - h)) / (2.0 * h);
      CHECK(std::abs(f_lambda_deriv(lam, x) - fd) <=
            1e-6 * std::max(std::abs(fd), 1e-10));
    }
  }
  // nonincreasing and convex along a sweep
  double prev = f_lambda(1.0, 0.0), prev_slope = -1e9;
  bool first = true;
  for (double x = 0.25; x <= 40.0; x += 0.25) {
    double v = f_lambda(1.0, x);
    double slope = (v - prev) / 0.25;
    CHECK(v <= prev);
    if (!first) CHECK(slope >= prev_slope - 1e-12);
    prev = v;
    prev_slope = slope;
    first = false;
  }
}

TEST_CASE("lower rate domain") {
  CHECK_THROWS_AS(f_lambda(1.0, -0.5), std::domain_error);
  CHECK_THROWS_AS(f_lambda(-1.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(f_lambda_deriv(1.0, -1.0), std::domain_error);
}

TEST_CASE("upper rate phi") {
  CHECK(std::abs(upper_rate_phi(1.0, 0.5) - 0.82718402612752432) <= 1e-15);
  CHECK(std::abs(upper_rate_phi(1.0, 3.0) - 0.53368774627544857) <= 1e-15);
  CHECK(std::abs(upper_rate_phi(1.0, 100.0) - 0.091168758637102626) <= 1e-15);
  CHECK_THROWS_AS(upper_rate_phi(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(upper_rate_phi(1.0, -2.0), std::domain_error);

  // the two branches agree where log lambda = d
  for (double d : {0.5, 1.0, 2.0}) {
    double lam = std::exp(d);
    CHECK(std::abs(upper_rate_phi(lam, d) - (1.0 + 0.5 * d)) <= 1e-12);
    CHECK(std::abs(upper_rate_phi(lam * (1 + 1e-9), d) -
                   upper_rate_phi(lam * (1 - 1e-9), d)) <= 1e-8);
  }
}

TEST_CASE("lower stays below upper") {
  for (double x : {0.5, 1.0, 2.0, 3.0, 10.0, 100.0, 1000.0}) {
    CHECK(f_lambda(1.0, x) <= upper_rate_phi(1.0, x));
    CHECK(f_lambda(0.3, x) <= upper_rate_phi(0.3, x));
  }
}

TEST_CASE("classical rate") {
  CHECK(shearer_rate(0.0) == 1.0);
  CHECK(shearer_rate(1.0) == 0.5);
  CHECK(std::abs(shearer_rate(2.0) - 0.38629436111989062) <= 1e-15);
  CHECK(std::abs(shearer_rate(3.0) - 0.32395921650108227) <= 1e-15);
  CHECK(std::abs(shearer_rate(10.0) - 0.17315865345605502) <= 1e-15);
  CHECK_THROWS_AS(shearer_rate(-1.0), std::domain_error);

  // derivative: closed form against secants, including across the seam at 1
  CHECK(std::abs(shearer_rate_deriv(1.0) + 1.0 / 6.0) <= 1e-12);
  for (double d : {0.2, 1.0 - 1e-5, 1.0 + 1e-5, 2.5, 50.0}) {
    double h = 1e-6 * std::max(1.0, d);
    double fd = (shearer_rate(d + h) - shearer_rate(d - h)) / (2.0 * h);
    CHECK(std::abs(shearer_rate_deriv(d) - fd) <= 1e-5 * std::abs(fd));
  }
  // asymptotically log d / d
  CHECK(std::abs(shearer_rate(1e6) * 1e6 / std::log(1e6) - 1.0) <= 0.1);
}

TEST_CASE("classical rate crosses W(d)/d") {
  // W(d)/d dips below the classical rate only from d ~ 11.6 on; at 10 the
  // order is still reversed
  CHECK(lambert_w(10.0) / 10.0 > shearer_rate(10.0));
  for (double d = 12.0; d <= 200.0; d += 4.0)
    CHECK(lambert_w(d) / d < shearer_rate(d));
}

TEST_CASE("sharpness scale eta") {
  CHECK(std::abs(shearer_sharpness_eta(2.0) - 1.0) <= 1e-14);
  double two_e = 2.0 * std::exp(1.0);
  CHECK(std::abs(shearer_sharpness_eta(two_e) - 0.5728418527818121) <= 1e-15);
  CHECK(std::abs(shearer_sharpness_eta(4.0) - 0.68741126409181169) <= 1e-15);
  CHECK_THROWS_AS(shearer_sharpness_eta(1.9), std::domain_error);

  // defining identity d/2 = (1/eta) log(e/eta)
  for (double d = 2.0; d <= 300.0; d *= 1.7) {
    double eta = shearer_sharpness_eta(d);
    CHECK(std::abs((1.0 / eta) * (1.0 - std::log(eta)) - 0.5 * d) <=
          1e-12 * d);
  }
}

TEST_CASE("conjectured occupancy rate") {
  CHECK(std::abs(conjecture_rhs(1.0, 0.0) - 0.42630275100686275) <= 1e-15);
  CHECK(std::abs(conjecture_rhs(1.0, 1.0) - 0.28546221160394162) <= 1e-15);
  CHECK(std::abs(conjecture_rhs(1.0, 2.0) - 0.23010983749291725) <= 1e-15);
  CHECK(std::abs(conjecture_rhs(1.0, 3.0) - 0.19730339295031447) <= 1e-15);
  CHECK(std::abs(conjecture_rhs(0.25, 0.0) - 0.17586685562459791) <= 1e-15);
  CHECK_THROWS_AS(conjecture_rhs(0.0, 3.0), std::domain_error);
  CHECK_THROWS_AS(conjecture_rhs(1.0, -1.0), std::domain_error);

  // smooth through the seam at d = 2: the straddling secant agrees with a
  // wide secant to the curvature scale
  for (double lam : {0.25, 1.0, 5.0}) {
    double secant =
        (conjecture_rhs(lam, 2.0 + 1.5e-4) - conjecture_rhs(lam, 2.0 - 1.5e-4)) /
        3e-4;
    double wider =
        (conjecture_rhs(lam, 2.0 + 0.1) - conjecture_rhs(lam, 2.0 - 0.1)) / 0.2;
    CHECK(std::abs(secant - wider) <= 0.02 * std::abs(wider) + 1e-9);
  }
}

TEST_CASE("conjectured rate approaches log d over d from below") {
  // ratio to log(d)/d: 0.6378, 0.7622, 0.8198 at d = 1e3, 1e6, 1e9
  double r3 = conjecture_rhs(1.0, 1e3) * 1e3 / std::log(1e3);
  double r6 = conjecture_rhs(1.0, 1e6) * 1e6 / std::log(1e6);
  double r9 = conjecture_rhs(1.0, 1e9) * 1e9 / std::log(1e9);
  CHECK(std::abs(r3 - 0.63780617442106592) <= 1e-12);
  CHECK(std::abs(r6 - 0.76224281408137376) <= 1e-12);
  CHECK(std::abs(r9 - 0.81980903169697235) <= 1e-12);
  CHECK(r3 < r6);
  CHECK(r6 < r9);
  CHECK(r9 < 1.0);
  CHECK(r6 > 0.75);  // within 25% of the limit by d = 1e6
}

TEST_CASE("lower rate approaches its large-degree shape") {
  // f_lambda(1, x) against (log x)^2 / (2x): ratio 0.7854 at x = 1e6,
  // increasing toward 1
  double q6 = f_lambda(1.0, 1e6) * 2e6 / std::pow(std::log(1e6), 2);
  CHECK(std::abs(q6 - 0.78544045846636075) <= 1e-12);
  double q9 = f_lambda(1.0, 1e9) * 2e9 / std::pow(std::log(1e9), 2);
  CHECK(q6 < q9);
  CHECK(q9 < 1.0);
  CHECK(q6 > 0.75);
}

TEST_CASE("tabulate helper") {
  auto rows = tabulate_rate(f_lambda, 1.0, {0.0, 2.0, 3.0});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].lambda == 1.0);
  CHECK(rows[1].d == 2.0);
  CHECK(rows[1].value == f_lambda(1.0, 2.0));
  CHECK(rows[2].value == f_lambda(1.0, 3.0));
}
