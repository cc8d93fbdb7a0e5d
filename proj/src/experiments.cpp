#include "hardcore/experiments.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hardcore/ipoly.hpp"
#include "hardcore/rates.hpp"

namespace hardcore {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// unbiased bounded draw by rejection
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t k) {
  std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % k + 1) % k;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  for (;;) {
    std::uint64_t v = gen();
    if (v <= limit) return v % k;
  }
}

std::optional<std::array<int, 3>> smallest_triangle(const Graph& g) {
  for (int u = 0; u < g.n(); ++u) {
    auto nu = g.neighbors(u);
    for (int v : nu) {
      if (v <= u) continue;
      auto nv = g.neighbors(v);
      auto iu = std::upper_bound(nu.begin(), nu.end(), v);
      auto iv = std::upper_bound(nv.begin(), nv.end(), v);
      while (iu != nu.end() && iv != nv.end()) {
        if (*iu < *iv)
          ++iu;
        else if (*iv < *iu)
          ++iv;
        else
          return std::array<int, 3>{u, v, *iu};
      }
    }
  }
  return std::nullopt;
}

// d -> 0 continuation of the upper rate (the formula itself needs d > 0)
double upper_rate_phi_ext(double lambda, double d) {
  if (d > 0.0) return upper_rate_phi(lambda, d);
  return lambda <= 1.0 ? lambda : 1.0 + std::log(lambda);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

Graph sample_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("sample_gnp requires n >= 0");
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    throw std::invalid_argument("sample_gnp requires p in [0, 1]");
  std::mt19937_64 gen(splitmix64(seed));
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform01(gen) < p) edges.emplace_back(u, v);
  return from_edge_list(n, edges);
}

TriangleFreeOutcome make_triangle_free(
    const Graph& g, TriangleFreeMode mode, std::uint64_t seed, int max_tries,
    const std::function<Graph(int)>& resample) {
  if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");
  if (mode == TriangleFreeMode::kRejection) {
    Graph candidate = g;
    for (int t = 1;; ++t) {
      if (is_triangle_free(candidate)) return {std::move(candidate), t, 0};
      if (!resample)
        throw std::invalid_argument(
            "rejection mode needs a resample callback for non-triangle-free input");
      if (t >= max_tries) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "rejection sampling failed after %d tries "
                      "(empirical acceptance rate 0/%d)",
                      max_tries, max_tries);
        throw std::runtime_error(buf);
      }
      candidate = resample(t);
    }
  }
  // triangle deletion: repeatedly break the lexicographically smallest
  // triangle by removing one of its edges uniformly at random
  std::mt19937_64 gen(splitmix64(seed));
  Graph candidate = g;
  std::int64_t removed = 0;
  for (;;) {
    auto tri = smallest_triangle(candidate);
    if (!tri) break;
    auto [u, v, w] = *tri;
    std::array<Edge, 3> sides{{{u, v}, {u, w}, {v, w}}};
    Edge gone = sides[bounded(gen, 3)];
    std::vector<Edge> edges = candidate.edges();
    std::erase(edges, gone);
    candidate = from_edge_list(candidate.n(), edges);
    ++removed;
  }
  return {std::move(candidate), 1, removed};
}

std::vector<ExperimentResult> sharpness_experiment(const ExperimentConfig& cfg,
                                                   ExperimentSummary* summary) {
  if (cfg.n < 1 || cfg.n > 64)
    throw std::invalid_argument("sharpness_experiment requires 1 <= n <= 64");
  if (cfg.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  if (std::isnan(cfg.d) || cfg.d < 0.0 || cfg.d > cfg.n)
    throw std::invalid_argument("target degree must lie in [0, n]");
  if (cfg.lambda <= 0) throw std::invalid_argument("lambda must be positive");

  double lam = cfg.lambda.get_d();
  double p = cfg.d / cfg.n;
  std::vector<ExperimentResult> results;
  results.reserve(cfg.replicas);
  for (int r = 0; r < cfg.replicas; ++r) {
    std::uint64_t rseed = derive_seed(cfg.seed, r);
    Graph sample = sample_gnp(cfg.n, p, derive_seed(rseed, 0));
    TriangleFreeOutcome out;
    if (cfg.tf_mode == TriangleFreeMode::kRejection) {
      auto redraw = [&](int t) {
        return sample_gnp(cfg.n, p, derive_seed(rseed, static_cast<std::uint64_t>(t)));
      };
      out = make_triangle_free(sample, cfg.tf_mode, rseed, cfg.max_tries, redraw);
    } else {
      out = make_triangle_free(sample, cfg.tf_mode,
                               derive_seed(rseed, std::uint64_t{1} << 32),
                               cfg.max_tries);
    }

    auto poly = independence_polynomial(out.graph);
    ExperimentResult res;
    res.replica = r;
    res.replica_seed = rseed;
    res.n = cfg.n;
    res.realized_avg_degree = out.graph.average_degree();
    res.triangles_removed = out.edges_removed;
    res.log_z_per_vertex = log_z(poly, cfg.lambda) / cfg.n;
    res.alpha_per_vertex = static_cast<double>(independence_number(poly)) / cfg.n;
    res.occupancy_per_vertex = occupancy_fraction(poly, cfg.lambda) / cfg.n;

    if (lam <= 1.0) {
      double bound = f_lambda(lam, res.realized_avg_degree);
      if (res.log_z_per_vertex < bound - 1e-9) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "fatal inconsistency: replica %d has log Z/n = %.17g "
                      "below the proven rate %.17g at degree %.17g",
                      r, res.log_z_per_vertex, bound, res.realized_avg_degree);
        throw std::runtime_error(buf);
      }
    }
    results.push_back(std::move(res));
  }

  if (summary) {
    std::vector<double> logz, upper_gap;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& res : results) {
      logz.push_back(res.log_z_per_vertex);
      upper_gap.push_back(upper_rate_phi_ext(lam, res.realized_avg_degree) -
                          res.log_z_per_vertex);
      min_margin = std::min(min_margin, res.log_z_per_vertex -
                                            f_lambda(lam, res.realized_avg_degree));
    }
    auto sorted = logz;
    std::sort(sorted.begin(), sorted.end());
    summary->min_log_z = sorted.front();
    summary->max_log_z = sorted.back();
    summary->median_log_z = median_of(logz);
    summary->min_lower_margin = min_margin;
    summary->median_upper_gap = median_of(upper_gap);
  }
  return results;
}

GlauberEstimate glauber_occupancy(const Graph& g, double lambda,
                                  std::int64_t steps, std::int64_t burn_in,
                                  std::uint64_t seed, bool validate_chain) {
  if (g.n() < 1) throw std::invalid_argument("glauber_occupancy needs n >= 1");
  if (std::isnan(lambda) || lambda <= 0.0)
    throw std::domain_error("glauber_occupancy requires lambda > 0");
  int n = g.n();
  double scale = n * std::log(n + 1.0);
  if (burn_in == 0) burn_in = static_cast<std::int64_t>(std::ceil(100.0 * scale));
  if (steps == 0) steps = burn_in + static_cast<std::int64_t>(std::ceil(1000.0 * scale));
  if (steps <= burn_in)
    throw std::invalid_argument("steps must exceed burn_in");

#ifndef NDEBUG
  if (n <= 20) validate_chain = true;
#endif

  std::mt19937_64 gen(splitmix64(seed));
  double p_occ = lambda / (1.0 + lambda);
  std::vector<char> occ(n, 0);
  std::int64_t occupied = 0;

  auto step_once = [&] {
    int v = static_cast<int>(bounded(gen, static_cast<std::uint64_t>(n)));
    bool blocked = false;
    for (int w : g.neighbors(v)) {
      if (occ[w]) {
        blocked = true;
        break;
      }
    }
    char next = !blocked && uniform01(gen) < p_occ;
    occupied += next - occ[v];
    occ[v] = next;
    if (validate_chain) {
      for (int u = 0; u < n; ++u)
        if (occ[u])
          for (int w : g.neighbors(u))
            if (occ[w])
              throw std::logic_error("glauber chain left the independent sets");
    }
  };

  for (std::int64_t i = 0; i < burn_in; ++i) step_once();

  std::int64_t measure = steps - burn_in;
  int batches = measure >= 30 ? 30 : static_cast<int>(measure);
  std::int64_t base = measure / batches, extra = measure % batches;
  std::vector<double> batch_mean(batches);
  double total = 0.0;
  for (int b = 0; b < batches; ++b) {
    std::int64_t len = base + (b < extra ? 1 : 0);
    double acc = 0.0;
    for (std::int64_t i = 0; i < len; ++i) {
      step_once();
      acc += static_cast<double>(occupied);
    }
    batch_mean[b] = acc / static_cast<double>(len);
    total += acc;
  }

  double mean = total / static_cast<double>(measure);
  double var = 0.0;
  for (double bm : batch_mean) var += (bm - mean) * (bm - mean);
  var = batches > 1 ? var / (batches - 1) : 0.0;

  GlauberEstimate est;
  est.occupancy = mean / n;
  est.standard_error = std::sqrt(var / batches) / n;
  est.steps = steps;
  est.burn_in = burn_in;
  return est;
}

ConjectureScanReport conjecture_scan(int n_max, const std::vector<mpq_class>& lambdas,
                                     int keep) {
  if (n_max < 1 || n_max > 7)
    throw std::invalid_argument("conjecture_scan requires 1 <= n_max <= 7");
  if (lambdas.empty()) throw std::invalid_argument("no lambda values given");
  for (const auto& l : lambdas)
    if (l <= 0) throw std::invalid_argument("lambda values must be positive");
  if (keep < 1) throw std::invalid_argument("keep must be >= 1");

  auto worse = [](const ConjectureRecord& a, const ConjectureRecord& b) {
    return a.slack < b.slack;
  };
  std::priority_queue<ConjectureRecord, std::vector<ConjectureRecord>,
                      decltype(worse)>
      top(worse);
  ConjectureScanReport report;

  for (int n = 1; n <= n_max; ++n) {
    LabeledGraphEnumerator en(n, true);
    while (auto g = en.next()) {
      auto poly = independence_polynomial(*g);
      double d = g->average_degree();
      auto edges = g->edges();
      for (const auto& lam : lambdas) {
        double occ = occupancy_fraction_exact(poly, lam).get_d();
        double slack = occ - n * conjecture_rhs(lam.get_d(), d);
        ++report.evaluations;
        ConjectureRecord rec{slack, lam, n, edges, occ};
        if (static_cast<int>(top.size()) < keep) {
          top.push(std::move(rec));
        } else if (slack < top.top().slack) {
          top.pop();
          top.push(std::move(rec));
        }
      }
    }
  }

  while (!top.empty()) {
    report.smallest.push_back(top.top());
    top.pop();
  }
  std::reverse(report.smallest.begin(), report.smallest.end());
  report.minimum = report.smallest.front();
  return report;
}

std::vector<LimitRatioRow> limit_ratio_check(const Graph& g,
                                             const std::vector<double>& lambdas) {
  if (g.n() < 1) throw std::invalid_argument("limit_ratio_check needs n >= 1");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 1.0))
      throw std::invalid_argument("lambda values must exceed 1");
    if (i && !(lambdas[i] > lambdas[i - 1]))
      throw std::invalid_argument("lambda values must increase");
  }
  auto poly = independence_polynomial(g);
  double frac = static_cast<double>(independence_number(poly)) / g.n();
  std::vector<LimitRatioRow> rows;
  for (double lam : lambdas) {
    mpq_class exact;
    mpq_set_d(exact.get_mpq_t(), lam);
    double ratio = log_z(poly, exact) / (g.n() * std::log(lam));
    rows.push_back({lam, ratio, ratio - frac});
  }
  return rows;
}

// ---------------------------------------------------------------------------

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    key = strip(key);
    if (key.empty()) continue;
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string value = strip(line.substr(eq + 1));
    auto bad_value = [&]() -> std::invalid_argument {
      return std::invalid_argument("config line " + std::to_string(lineno) +
                                   ": bad value for " + key);
    };
    if (key == "tf_mode") {
      if (value == "rejection")
        cfg.tf_mode = TriangleFreeMode::kRejection;
      else if (value == "triangle-deletion")
        cfg.tf_mode = TriangleFreeMode::kTriangleDeletion;
      else
        throw bad_value();
      continue;
    }
    try {
      if (key == "n")
        cfg.n = std::stoi(value);
      else if (key == "d")
        cfg.d = std::stod(value);
      else if (key == "lambda")
        cfg.lambda = parse_rational(value);
      else if (key == "replicas")
        cfg.replicas = std::stoi(value);
      else if (key == "seed")
        cfg.seed = std::stoull(value);
      else if (key == "mcmc_steps")
        cfg.mcmc_steps = std::stoll(value);
      else if (key == "burn_in")
        cfg.burn_in = std::stoll(value);
      else if (key == "max_tries")
        cfg.max_tries = std::stoi(value);
      else
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unknown key: " + key);
    } catch (const std::exception&) {
      if (key == "n" || key == "d" || key == "lambda" || key == "replicas" ||
          key == "seed" || key == "mcmc_steps" || key == "burn_in" ||
          key == "max_tries")
        throw bad_value();
      throw;
    }
  }
  return cfg;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_experiment_config(in);
}

std::string format_experiment_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "n = " << cfg.n << '\n'
      << "d = " << cfg.d << '\n'
      << "lambda = " << cfg.lambda.get_num().get_str() << '/'
      << cfg.lambda.get_den().get_str() << '\n'
      << "replicas = " << cfg.replicas << '\n'
      << "seed = " << cfg.seed << '\n'
      << "tf_mode = "
      << (cfg.tf_mode == TriangleFreeMode::kRejection ? "rejection"
                                                      : "triangle-deletion")
      << '\n'
      << "mcmc_steps = " << cfg.mcmc_steps << '\n'
      << "burn_in = " << cfg.burn_in << '\n'
      << "max_tries = " << cfg.max_tries << '\n';
  return out.str();
}

std::string experiment_csv_header() {
  return "replica,seed,n,realized_d,triangles_removed,log_z_per_vertex,"
         "alpha_per_vertex,occupancy_per_vertex";
}

std::string format_experiment_row(const ExperimentResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%llu,%d,%.12g,%lld,%.12g,%.12g,%.12g",
                r.replica, static_cast<unsigned long long>(r.replica_seed), r.n,
                r.realized_avg_degree, static_cast<long long>(r.triangles_removed),
                r.log_z_per_vertex, r.alpha_per_vertex, r.occupancy_per_vertex);
  return buf;
}

}  // namespace hardcore
