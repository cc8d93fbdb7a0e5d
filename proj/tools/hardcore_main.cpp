// hardcore: exact counting and bound verification for the hard-core model
// on triangle-free graphs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardcore/experiments.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/ipoly.hpp"
#include "hardcore/lambert.hpp"
#include "hardcore/rates.hpp"
#include "hardcore/verifier.hpp"

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

hardcore::Graph load_graph(const std::string& path) {
  if (path == "-") return hardcore::read_graph(std::cin);
  return hardcore::read_graph_file(path);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

double phi_with_limit(double lambda, double d) {
  if (d > 0.0) return hardcore::upper_rate_phi(lambda, d);
  return lambda <= 1.0 ? lambda : 1.0 + std::log(lambda);
}

std::string edges_label(const std::vector<hardcore::Edge>& edges) {
  if (edges.empty()) return "-";
  std::string out;
  for (auto [u, v] : edges) {
    if (!out.empty()) out += ' ';
    out += std::to_string(u) + "-" + std::to_string(v);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{
      "exact independence-polynomial counting and numerical verification of "
      "hard-core lower bounds on triangle-free graphs"};
  app.require_subcommand(1);

  // ---- count ----
  std::string count_path, count_lambda = "1";
  bool count_poly = false, count_occ = false, count_alpha = false;
  auto* count = app.add_subcommand("count", "exact independent-set counts");
  count->add_option("graph", count_path, "graph file (\"-\" for stdin)")->required();
  count->add_option("--lambda", count_lambda, "fugacity, as a rational");
  count->add_flag("--polynomial", count_poly, "also print the full polynomial");
  count->add_flag("--occupancy", count_occ, "also print the occupancy fraction");
  count->add_flag("--alpha", count_alpha, "also print the independence number");

  // ---- bounds ----
  double bounds_lambda = 1.0, bounds_d = 3.0;
  auto* bounds = app.add_subcommand("bounds", "rate functions at one (lambda, d)");
  bounds->add_option("--lambda", bounds_lambda, "fugacity");
  bounds->add_option("--d", bounds_d, "average degree")->required();

  // ---- shared grid options ----
  hardcore::GridSpec grid;
  auto add_grid_options = [&grid](CLI::App* cmd) {
    cmd->add_option("--grid-log-min", grid.log_min, "log grid lower end");
    cmd->add_option("--grid-log-max", grid.log_max, "log grid upper end");
    cmd->add_option("--grid-log-points", grid.log_points, "log grid size");
    cmd->add_option("--grid-lin-min", grid.lin_min, "linear grid lower end");
    cmd->add_option("--grid-lin-max", grid.lin_max, "linear grid upper end");
    cmd->add_option("--grid-lin-points", grid.lin_points, "linear grid size");
    cmd->add_flag_callback(
        "--no-special", [&grid] { grid.include_special = false; },
        "omit the structural special points");
  };

  // ---- verify ----
  double v_min = 0.0, v_max = 1.0, v_step = 0.05;
  auto* verify = app.add_subcommand(
      "verify", "certify monotonicity, convexity and the bound inequality");
  verify->add_option("--lambda-min", v_min, "first fugacity");
  verify->add_option("--lambda-max", v_max, "last fugacity");
  verify->add_option("--step", v_step, "fugacity step");
  add_grid_options(verify);

  // ---- lambda-max ----
  double lm_resolution = 1e-3;
  auto* lmax = app.add_subcommand(
      "lambda-max", "largest fugacity that still certifies on the grid");
  lmax->add_option("--resolution", lm_resolution, "bisection resolution");
  add_grid_options(lmax);

  // ---- crossover ----
  auto* crossover = app.add_subcommand(
      "crossover", "fugacity where the degree-0 rate passes the edgeless graph");

  // ---- experiment ----
  std::string exp_config, exp_output;
  auto* experiment =
      app.add_subcommand("experiment", "random triangle-free sharpness replicas");
  experiment->add_option("--config", exp_config, "flat key = value config file")
      ->required();
  experiment->add_option("--output", exp_output, "CSV destination (default stdout)");

  // ---- conjecture ----
  int conj_nmax = 7, conj_keep = 100;
  std::vector<std::string> conj_lambdas;
  bool conj_list = false;
  auto* conjecture = app.add_subcommand(
      "conjecture", "exhaustive occupancy-bound scan over small graphs");
  conjecture->add_option("--n-max", conj_nmax, "largest vertex count (<= 7)");
  conjecture->add_option("--lambda", conj_lambdas,
                         "fugacities to scan (rationals; default 1/4 1/2 1)");
  conjecture->add_option("--keep", conj_keep, "how many smallest slacks to keep");
  conjecture->add_flag("--list", conj_list, "print the kept records");

  // ---- plotdata ----
  double p_dmin = 0.0, p_dmax = 100.0, p_step = 0.1, p_lambda = 1.0;
  std::string p_output;
  auto* plotdata =
      app.add_subcommand("plotdata", "lower/upper rate table over a degree range");
  plotdata->add_option("--d-min", p_dmin, "first degree");
  plotdata->add_option("--d-max", p_dmax, "last degree");
  plotdata->add_option("--step", p_step, "degree step");
  plotdata->add_option("--lambda", p_lambda, "fugacity");
  plotdata->add_option("--output", p_output, "destination (default stdout)");

  // ---- enumerate ----
  int en_n = 0;
  bool en_tf = false, en_count_only = false;
  std::string en_output;
  auto* enumerate =
      app.add_subcommand("enumerate", "stream all labeled graphs on n vertices");
  enumerate->add_option("n", en_n, "vertex count (<= 7)")->required();
  enumerate->add_flag("--triangle-free", en_tf, "only triangle-free graphs");
  enumerate->add_flag("--count-only", en_count_only, "print only the number");
  enumerate->add_option("--output", en_output, "destination (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*count) {
    hardcore::Graph g = load_graph(count_path);
    mpq_class lambda = hardcore::parse_rational(count_lambda);
    if (lambda < 0) throw std::runtime_error("lambda must be nonnegative");
    auto poly = hardcore::independence_polynomial(g);
    double lz = hardcore::log_z(poly, lambda);
    std::string line = "i=" + hardcore::independent_set_count(poly).get_str();
    line += ", logZ/n=" + num(g.n() ? lz / g.n() : 0.0);
    if (count_alpha)
      line += ", alpha=" + std::to_string(hardcore::independence_number(poly));
    if (count_occ) {
      if (lambda <= 0) throw std::runtime_error("occupancy needs lambda > 0");
      double occ = hardcore::occupancy_fraction(poly, lambda);
      line += ", occupancy=" + num(occ);
      if (g.n()) line += ", occupancy/n=" + num(occ / g.n());
    }
    std::cout << line << '\n';
    if (count_poly) std::cout << hardcore::format_polynomial(poly) << '\n';
    return 0;
  }

  if (*bounds) {
    std::cout << "f_lambda=" << num(hardcore::f_lambda(bounds_lambda, bounds_d))
              << '\n'
              << "upper_rate_phi=" << num(phi_with_limit(bounds_lambda, bounds_d))
              << '\n';
    if (bounds_d >= 0.0)
      std::cout << "shearer_rate=" << num(hardcore::shearer_rate(bounds_d)) << '\n';
    if (bounds_lambda > 0.0)
      std::cout << "conjecture_rhs="
                << num(hardcore::conjecture_rhs(bounds_lambda, bounds_d)) << '\n';
    return 0;
  }

  if (*verify) {
    if (v_step <= 0.0 || v_max < v_min)
      throw std::runtime_error("bad lambda range");
    std::cout << hardcore::format_report_header() << '\n';
    bool covered_failure = false;
    for (double lam = v_min; lam <= v_max + 1e-12; lam += v_step) {
      for (const auto& rep : hardcore::certify_lambda(lam, grid)) {
        std::cout << hardcore::format_report_row(rep) << '\n';
        if (!rep.passed && lam <= 1.0 + 1e-12) covered_failure = true;
      }
    }
    return covered_failure ? 1 : 0;
  }

  if (*lmax) {
    std::cout << "lambda_max=" << num(hardcore::estimate_lambda_max(lm_resolution, grid))
              << '\n';
    return 0;
  }

  if (*crossover) {
    std::cout << "crossover=" << num(hardcore::edgeless_crossover()) << '\n';
    return 0;
  }

  if (*experiment) {
    auto cfg = hardcore::parse_experiment_config_file(exp_config);
    hardcore::ExperimentSummary summary;
    auto results = hardcore::sharpness_experiment(cfg, &summary);
    std::ofstream file;
    std::ostream& out = open_output(file, exp_output);
    out << hardcore::experiment_csv_header() << '\n';
    for (const auto& r : results) out << hardcore::format_experiment_row(r) << '\n';
    if (!exp_output.empty() && exp_output != "-") {
      std::cout << "replicas=" << results.size() << '\n'
                << "min_log_z=" << num(summary.min_log_z) << '\n'
                << "median_log_z=" << num(summary.median_log_z) << '\n'
                << "max_log_z=" << num(summary.max_log_z) << '\n'
                << "min_lower_margin=" << num(summary.min_lower_margin) << '\n'
                << "median_upper_gap=" << num(summary.median_upper_gap) << '\n';
    }
    return 0;
  }

  if (*conjecture) {
    std::vector<mpq_class> lambdas;
    if (conj_lambdas.empty()) conj_lambdas = {"1/4", "1/2", "1"};
    for (const auto& s : conj_lambdas)
      lambdas.push_back(hardcore::parse_rational(s));
    auto report = hardcore::conjecture_scan(conj_nmax, lambdas, conj_keep);
    const auto& m = report.minimum;
    std::cout << "evaluations=" << report.evaluations << '\n'
              << "min_slack=" << num(m.slack) << '\n'
              << "at_lambda=" << m.lambda.get_num().get_str() << '/'
              << m.lambda.get_den().get_str() << '\n'
              << "at_n=" << m.n << '\n'
              << "at_edges=" << edges_label(m.edges) << '\n';
    if (conj_list) {
      std::cout << "slack\tlambda\tn\tedges\n";
      for (const auto& rec : report.smallest)
        std::cout << num(rec.slack) << '\t' << rec.lambda.get_num().get_str() << '/'
                  << rec.lambda.get_den().get_str() << '\t' << rec.n << '\t'
                  << edges_label(rec.edges) << '\n';
    }
    return 0;
  }

  if (*plotdata) {
    if (!(p_dmin >= 0.0) || !(p_dmax > p_dmin) || !(p_step > 0.0))
      throw std::runtime_error("need 0 <= d-min < d-max and a positive step");
    std::ofstream file;
    std::ostream& out = open_output(file, p_output);
    long rows = std::lround((p_dmax - p_dmin) / p_step);
    for (long i = 0; i <= rows; ++i) {
      double d = p_dmin + static_cast<double>(i) * p_step;
      if (d > p_dmax + 1e-12) break;
      out << num(d) << ' ' << num(hardcore::f_lambda(p_lambda, d)) << ' '
          << num(phi_with_limit(p_lambda, d)) << '\n';
    }
    return 0;
  }

  if (*enumerate) {
    hardcore::LabeledGraphEnumerator en(en_n, en_tf);
    std::ofstream file;
    std::ostream& out = open_output(file, en_output);
    std::uint64_t total = 0;
    while (auto g = en.next()) {
      ++total;
      if (!en_count_only) hardcore::write_graph(out, *g);
    }
    if (en_count_only)
      out << total << '\n';
    else
      std::cerr << total << " graphs\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
