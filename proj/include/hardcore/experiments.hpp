#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hardcore/graph.hpp"

namespace hardcore {

enum class TriangleFreeMode { kRejection, kTriangleDeletion };

/// Parsed from / serialized to a flat "key = value" config file; unknown
/// keys are rejected. Identical configs produce bit-identical results.
struct ExperimentConfig {
  int n = 30;
  double d = 3.0;                // target average degree; p = d/n
  mpq_class lambda = 1;
  int replicas = 50;
  std::uint64_t seed = 1;
  /// Rejection keeps the G(n,p) conditional law exactly (acceptance rate
  /// is about e^{-d^3/6}, workable up to d ~ 3); use triangle deletion for
  /// denser targets.
  TriangleFreeMode tf_mode = TriangleFreeMode::kRejection;
  /// 0 means "use the default" ceil(1000 n log(n+1)) / ceil(100 n log(n+1)).
  std::int64_t mcmc_steps = 0;
  std::int64_t burn_in = 0;
  int max_tries = 2000;
};

struct ExperimentResult {
  int replica = 0;
  std::uint64_t replica_seed = 0;
  int n = 0;
  double realized_avg_degree = 0.0;
  std::int64_t triangles_removed = 0;  // edges removed in deletion mode
  double log_z_per_vertex = 0.0;
  double alpha_per_vertex = 0.0;
  double occupancy_per_vertex = 0.0;
};

struct ExperimentSummary {
  double min_log_z = 0.0;
  double median_log_z = 0.0;
  double max_log_z = 0.0;
  /// min over replicas of log_z_per_vertex - f_lambda(lambda, realized d).
  double min_lower_margin = 0.0;
  /// median of upper_rate_phi(lambda, realized d) - log_z_per_vertex.
  double median_upper_gap = 0.0;
};

/// Stateless seed derivation (splitmix64 of base xor a stream constant):
/// replica r of an experiment uses derive_seed(cfg.seed, r), so each replica
/// is independently re-runnable.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// G(n, p): each unordered pair is an edge independently with probability p.
/// Driven by std::mt19937_64 seeded via splitmix64; pairs are visited in
/// lexicographic order, one uniform draw each, so samples are reproducible
/// across platforms.
Graph sample_gnp(int n, double p, std::uint64_t seed);

struct TriangleFreeOutcome {
  Graph graph;
  int tries = 1;                       // rejection mode: samples drawn
  std::int64_t edges_removed = 0;      // deletion mode
};

/// Conditions a sample to be triangle-free. Rejection mode redraws via the
/// callback (fresh sample per try) until triangle-free, failing after
/// max_tries with the empirical rejection rate in the error message.
/// Deletion mode repeatedly takes the lexicographically smallest triangle
/// and removes one of its three edges uniformly at random.
TriangleFreeOutcome make_triangle_free(
    const Graph& g, TriangleFreeMode mode, std::uint64_t seed, int max_tries,
    const std::function<Graph(int try_index)>& resample = {});

/// Samples `replicas` triangle-free graphs near average degree d, computes
/// exact log Z(lambda)/n, alpha/n and occupancy/n for each, and summarizes.
/// Throws std::runtime_error if any replica with lambda <= 1 lands below
/// the proven lower bound rate at its realized degree (that would indicate
/// a counting bug, not a graph).
std::vector<ExperimentResult> sharpness_experiment(const ExperimentConfig& cfg,
                                                   ExperimentSummary* summary = nullptr);

struct GlauberEstimate {
  double occupancy = 0.0;       // mean occupied fraction per vertex
  double standard_error = 0.0;  // batch means, 30 batches
  std::int64_t steps = 0;
  std::int64_t burn_in = 0;
};

/// Single-site heat-bath dynamics on independent sets: pick a uniform
/// vertex; if no neighbour is occupied, occupy it with probability
/// lambda/(1+lambda), else leave vacant. steps/burn_in of 0 select the
/// defaults above. With validate_chain, every visited configuration is
/// checked to be an independent set (also asserted in debug builds).
GlauberEstimate glauber_occupancy(const Graph& g, double lambda,
                                  std::int64_t steps = 0, std::int64_t burn_in = 0,
                                  std::uint64_t seed = 1,
                                  bool validate_chain = false);

struct ConjectureRecord {
  double slack = 0.0;       // exact occupancy minus n * conjecture_rhs
  mpq_class lambda = 1;
  int n = 0;
  std::vector<Edge> edges;  // attaining graph
  double occupancy = 0.0;   // exact total occupancy lambda Z'/Z
};

struct ConjectureScanReport {
  ConjectureRecord minimum;
  std::vector<ConjectureRecord> smallest;  // up to `keep` records, ascending
  std::uint64_t evaluations = 0;           // (graph, lambda) pairs scanned
};

/// Exhaustive scan of every labeled triangle-free graph with 1 <= n <= n_max
/// against the conjectured occupancy bound: slack(G, lambda) =
/// lambda Z'(lambda)/Z(lambda) - n * conjecture_rhs(lambda, average degree).
/// Reports the minimum and the `keep` smallest slacks. Evidence gathering
/// only; the sign of the minimum is a finding, never asserted.
ConjectureScanReport conjecture_scan(int n_max, const std::vector<mpq_class>& lambdas,
                                     int keep = 100);

struct LimitRatioRow {
  double lambda = 0.0;
  double ratio = 0.0;  // log Z(lambda) / (n log lambda)
  double gap = 0.0;    // ratio - alpha/n
};

/// Tracks log Z(lambda)/(n log lambda) toward its large-fugacity limit
/// alpha/n. Gaps are positive and decrease along an increasing lambda list.
std::vector<LimitRatioRow> limit_ratio_check(const Graph& g,
                                             const std::vector<double>& lambdas);

// ---------------------------------------------------------------------------
// Config and CSV plumbing.

ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);
std::string format_experiment_config(const ExperimentConfig& cfg);

std::string experiment_csv_header();
std::string format_experiment_row(const ExperimentResult& r);

}  // namespace hardcore
