#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "hardcore/experiments.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/ipoly.hpp"
#include "hardcore/rates.hpp"

using namespace hardcore;

namespace {

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return from_edge_list(n, e);
}

Graph triangle() { return from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}}); }

}  // namespace

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(0, 0) != 0);
}

TEST_CASE("gnp sampling") {
  CHECK(sample_gnp(0, 0.5, 1) == Graph(0));
  CHECK(sample_gnp(5, 0.0, 1) == Graph(5));
  Graph full = sample_gnp(6, 1.0, 1);
  CHECK(full.m() == 15);
  CHECK(sample_gnp(40, 0.1, 9) == sample_gnp(40, 0.1, 9));
  CHECK(sample_gnp(40, 0.1, 9) != sample_gnp(40, 0.1, 10));
  CHECK_THROWS_AS(sample_gnp(5, -0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_gnp(5, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_gnp(-2, 0.5, 1), std::invalid_argument);

  // degree concentration: mean degree p (n - 1) = 3 across seeds
  double total = 0.0;
  for (int s = 0; s < 50; ++s)
    total += sample_gnp(1000, 3.0 / 999.0, 100 + s).average_degree();
  CHECK(total / 50.0 >= 2.7);
  CHECK(total / 50.0 <= 3.3);
}

TEST_CASE("triangle-free conditioning, rejection mode") {
  // already triangle-free input comes back unchanged on the first try
  Graph c5 = cycle(5);
  auto out = make_triangle_free(c5, TriangleFreeMode::kRejection, 3, 10);
  CHECK(out.graph == c5);
  CHECK(out.tries == 1);
  CHECK(out.edges_removed == 0);

  // resampling until triangle-free, counting tries
  int calls = 0;
  auto resample = [&calls](int) {
    ++calls;
    return calls < 3 ? triangle() : cycle(4);
  };
  auto out2 =
      make_triangle_free(triangle(), TriangleFreeMode::kRejection, 3, 10, resample);
  CHECK(out2.graph == cycle(4));
  CHECK(out2.tries == 4);

  // exhausting max_tries reports the rejection rate
  auto always = [](int) { return triangle(); };
  CHECK_THROWS_WITH_AS(
      make_triangle_free(triangle(), TriangleFreeMode::kRejection, 3, 5, always),
      doctest::Contains("5"), std::runtime_error);

  // no resampler and a triangly input cannot make progress
  CHECK_THROWS_AS(make_triangle_free(triangle(), TriangleFreeMode::kRejection, 3, 5),
                  std::invalid_argument);
}

TEST_CASE("triangle-free conditioning, deletion mode") {
  auto out = make_triangle_free(triangle(), TriangleFreeMode::kTriangleDeletion, 1, 10);
  CHECK(is_triangle_free(out.graph));
  CHECK(out.graph.n() == 3);
  CHECK(out.graph.m() == 2);  // one edge removed from the unique triangle
  CHECK(out.edges_removed == 1);

  Graph k5 = sample_gnp(5, 1.0, 1);
  auto out5 = make_triangle_free(k5, TriangleFreeMode::kTriangleDeletion, 7, 10);
  CHECK(is_triangle_free(out5.graph));
  CHECK(out5.edges_removed == 10 - out5.graph.m());

  // deterministic in the seed
  auto a = make_triangle_free(k5, TriangleFreeMode::kTriangleDeletion, 9, 10);
  auto b = make_triangle_free(k5, TriangleFreeMode::kTriangleDeletion, 9, 10);
  CHECK(a.graph == b.graph);

  Graph c5 = cycle(5);
  CHECK(make_triangle_free(c5, TriangleFreeMode::kTriangleDeletion, 1, 10).graph ==
        c5);
}

TEST_CASE("sharpness experiment") {
  ExperimentConfig cfg;
  cfg.n = 18;
  cfg.d = 2.5;
  cfg.replicas = 6;
  cfg.seed = 11;
  ExperimentSummary summary;
  auto rows = sharpness_experiment(cfg, &summary);
  REQUIRE(rows.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(rows[i].replica == i);
    CHECK(rows[i].replica_seed == derive_seed(11, i));
    CHECK(rows[i].n == 18);
    CHECK(rows[i].log_z_per_vertex > 0.0);
    CHECK(rows[i].alpha_per_vertex > 0.0);
    CHECK(rows[i].alpha_per_vertex <= 1.0);
    CHECK(rows[i].occupancy_per_vertex > 0.0);
    CHECK(rows[i].occupancy_per_vertex < 1.0);
    CHECK(rows[i].triangles_removed == 0);  // rejection mode
    // the exact count respects the certified rate at the realized degree
    CHECK(rows[i].log_z_per_vertex >=
          f_lambda(1.0, rows[i].realized_avg_degree) - 1e-9);
  }
  CHECK(summary.min_log_z <= summary.median_log_z);
  CHECK(summary.median_log_z <= summary.max_log_z);
  CHECK(summary.min_lower_margin >= 0.0);

  // bit-identical reruns
  auto again = sharpness_experiment(cfg);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].log_z_per_vertex == rows[i].log_z_per_vertex);
    CHECK(again[i].realized_avg_degree == rows[i].realized_avg_degree);
  }

  ExperimentConfig bad = cfg;
  bad.replicas = 0;
  CHECK_THROWS_AS(sharpness_experiment(bad), std::invalid_argument);
  bad = cfg;
  bad.lambda = -1;
  CHECK_THROWS_AS(sharpness_experiment(bad), std::invalid_argument);
}

TEST_CASE("sharpness experiment, deletion mode") {
  ExperimentConfig cfg;
  cfg.n = 20;
  cfg.d = 4.0;
  cfg.replicas = 4;
  cfg.seed = 5;
  cfg.tf_mode = TriangleFreeMode::kTriangleDeletion;
  cfg.lambda = mpq_class(1, 2);
  auto rows = sharpness_experiment(cfg);
  for (const auto& r : rows) {
    CHECK(r.log_z_per_vertex >= f_lambda(0.5, r.realized_avg_degree) - 1e-9);
  }
}

TEST_CASE("glauber matches exact occupancy on tiny graphs") {
  // K_1: each accepted update occupies with chance 1/2, so the estimate is
  // an average of i.i.d. fair bits
  auto one = glauber_occupancy(Graph(1), 1.0, 40000, 4000, 2, true);
  CHECK(std::abs(one.occupancy - 0.5) <= std::max(3.0 * one.standard_error, 0.02));
  CHECK(one.steps == 40000);
  CHECK(one.burn_in == 4000);
  CHECK(one.standard_error > 0.0);

  // K_2 at lambda 1: states {}, {0}, {1} -> expected size 2/3, per vertex 1/3
  auto two = glauber_occupancy(from_edge_list(2, {{0, 1}}), 1.0, 120000, 8000, 3, true);
  CHECK(std::abs(two.occupancy - 1.0 / 3.0) <=
        std::max(3.0 * two.standard_error, 0.02));

  // determinism
  auto r1 = glauber_occupancy(cycle(5), 1.0, 20000, 2000, 4);
  auto r2 = glauber_occupancy(cycle(5), 1.0, 20000, 2000, 4);
  CHECK(r1.occupancy == r2.occupancy);
  CHECK(r1.standard_error == r2.standard_error);
}

TEST_CASE("glauber argument validation") {
  Graph c5 = cycle(5);
  CHECK_THROWS_AS(glauber_occupancy(c5, 0.0), std::domain_error);
  CHECK_THROWS_AS(glauber_occupancy(c5, -1.0), std::domain_error);
  CHECK_THROWS_AS(glauber_occupancy(c5, 1.0, 1000, 1000, 1),
                  std::invalid_argument);  // steps <= burn_in
  CHECK_THROWS_AS(glauber_occupancy(c5, 1.0, 500, 600, 1), std::invalid_argument);
  CHECK_THROWS_AS(glauber_occupancy(Graph(0), 1.0), std::invalid_argument);

  // defaults kick in when 0 is passed
  auto est = glauber_occupancy(Graph(2), 1.0);
  CHECK(est.burn_in > 0);
  CHECK(est.steps > est.burn_in);
}

TEST_CASE("conjecture scan on the smallest graphs") {
  auto report = conjecture_scan(2, {mpq_class(1)}, 10);
  CHECK(report.evaluations == 3);  // K_1, the edgeless pair, K_2
  REQUIRE(report.smallest.size() == 3);
  CHECK(std::is_sorted(report.smallest.begin(), report.smallest.end(),
                       [](const auto& a, const auto& b) { return a.slack < b.slack; }));
  CHECK(report.minimum.slack == report.smallest.front().slack);

  // K_1: occupancy 1/2, rhs(1, 0) = W(2)/2
  CHECK(report.minimum.n == 1);
  CHECK(report.minimum.edges.empty());
  CHECK(std::abs(report.minimum.slack - (0.5 - 0.42630275100686275)) <= 1e-12);
  // K_2: occupancy 2/3 against 2 rhs(1, 1)
  bool saw_k2 = false;
  for (const auto& rec : report.smallest) {
    if (rec.n == 2 && rec.edges.size() == 1) {
      saw_k2 = true;
      CHECK(std::abs(rec.slack - (2.0 / 3.0 - 2.0 * 0.28546221160394162)) <= 1e-12);
      CHECK(std::abs(rec.occupancy - 2.0 / 3.0) <= 1e-15);
    }
  }
  CHECK(saw_k2);

  // keep cap respected
  CHECK(conjecture_scan(3, {mpq_class(1)}, 2).smallest.size() == 2);
  CHECK_THROWS_AS(conjecture_scan(8, {mpq_class(1)}, 5), std::invalid_argument);
  CHECK_THROWS_AS(conjecture_scan(3, {mpq_class(-1)}, 5), std::invalid_argument);
  CHECK_THROWS_AS(conjecture_scan(3, {}, 5), std::invalid_argument);
}

TEST_CASE("limit ratio approaches alpha over n") {
  auto rows = limit_ratio_check(cycle(5), {1e3, 1e6, 1e9});
  REQUIRE(rows.size() == 3);
  // log(5005001) / (5 log 1000), frozen from mpmath
  CHECK(std::abs(rows[0].ratio - 0.44662694457249687) <= 1e-12);
  for (const auto& r : rows) CHECK(r.gap > 0.0);
  CHECK(rows[0].gap > rows[1].gap);
  CHECK(rows[1].gap > rows[2].gap);
  // convergence to alpha/n = 2/5 is logarithmic; frozen value at 1e9
  CHECK(std::abs(rows[2].ratio - 0.41553266677267363) <= 1e-12);
  CHECK_THROWS_AS(limit_ratio_check(cycle(5), {0.5, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(limit_ratio_check(cycle(5), {10.0, 5.0}), std::invalid_argument);
}

TEST_CASE("config round trip and validation") {
  ExperimentConfig cfg;
  cfg.n = 24;
  cfg.d = 2.5;
  cfg.lambda = mpq_class(2, 3);
  cfg.replicas = 12;
  cfg.seed = 99;
  cfg.tf_mode = TriangleFreeMode::kTriangleDeletion;
  cfg.mcmc_steps = 5000;
  cfg.burn_in = 500;
  cfg.max_tries = 77;
  std::istringstream in(format_experiment_config(cfg));
  ExperimentConfig back = parse_experiment_config(in);
  CHECK(back.n == cfg.n);
  CHECK(back.d == cfg.d);
  CHECK(back.lambda == cfg.lambda);
  CHECK(back.replicas == cfg.replicas);
  CHECK(back.seed == cfg.seed);
  CHECK(back.tf_mode == cfg.tf_mode);
  CHECK(back.mcmc_steps == cfg.mcmc_steps);
  CHECK(back.burn_in == cfg.burn_in);
  CHECK(back.max_tries == cfg.max_tries);

  std::istringstream partial("n = 10\n# a comment\n\nlambda = 1/2\n");
  ExperimentConfig p = parse_experiment_config(partial);
  CHECK(p.n == 10);
  CHECK(p.lambda == mpq_class(1, 2));
  CHECK(p.d == 3.0);  // untouched defaults

  std::istringstream unknown("frobnicate = 3\n");
  CHECK_THROWS_WITH_AS(parse_experiment_config(unknown),
                       doctest::Contains("frobnicate"), std::invalid_argument);
  std::istringstream badval("n = pony\n");
  CHECK_THROWS_WITH_AS(parse_experiment_config(badval), doctest::Contains("n"),
                       std::invalid_argument);
  std::istringstream badmode("tf_mode = banana\n");
  CHECK_THROWS_AS(parse_experiment_config(badmode), std::invalid_argument);
  std::istringstream noeq("just words\n");
  CHECK_THROWS_AS(parse_experiment_config(noeq), std::invalid_argument);
}

TEST_CASE("csv formatting") {
  CHECK(experiment_csv_header() ==
        "replica,seed,n,realized_d,triangles_removed,log_z_per_vertex,"
        "alpha_per_vertex,occupancy_per_vertex");
  ExperimentResult r;
  r.replica = 3;
  r.replica_seed = 42;
  r.n = 10;
  r.realized_avg_degree = 2.5;
  r.triangles_removed = 1;
  r.log_z_per_vertex = 0.5;
  r.alpha_per_vertex = 0.4;
  r.occupancy_per_vertex = 0.25;
  std::string row = format_experiment_row(r);
  CHECK(std::count(row.begin(), row.end(), ',') == 7);
  CHECK(row.substr(0, 5) == "3,42,");
}
