#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hardcore/experiments.hpp"
#include "hardcore/graph.hpp"
#include "hardcore/ipoly.hpp"
#include "hardcore/lambert.hpp"
#include "hardcore/rates.hpp"
#include "hardcore/verifier.hpp"

namespace py = pybind11;
using namespace hardcore;

namespace {

// GMP values cross the boundary as decimal strings; python ints are unbounded
// so nothing is lost.
py::int_ to_pyint(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

mpz_class to_mpz(const py::int_& v) {
  return mpz_class(py::str(v).cast<std::string>());
}

mpq_class to_mpq(const py::object& v) {
  if (py::isinstance<py::str>(v)) return parse_rational(v.cast<std::string>());
  if (py::isinstance<py::int_>(v)) return mpq_class(to_mpz(v));
  if (py::isinstance<py::float_>(v)) {
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), v.cast<double>());
    return q;
  }
  if (py::hasattr(v, "numerator") && py::hasattr(v, "denominator")) {
    mpq_class q(to_mpz(v.attr("numerator")), to_mpz(v.attr("denominator")));
    q.canonicalize();
    return q;
  }
  throw py::type_error("expected str, int, float or Fraction for a rational");
}

py::object to_pyfraction(const mpq_class& q) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::str(q.get_str()));
}

IndependencePolynomial to_poly(const std::vector<py::int_>& coeffs) {
  IndependencePolynomial p;
  p.reserve(coeffs.size());
  for (const auto& c : coeffs) p.push_back(to_mpz(c));
  return p;
}

py::list from_poly(const IndependencePolynomial& p) {
  py::list out;
  for (const auto& c : p) out.append(to_pyint(c));
  return out;
}

TriangleFreeMode parse_mode(const std::string& s) {
  if (s == "rejection") return TriangleFreeMode::kRejection;
  if (s == "triangle-deletion") return TriangleFreeMode::kTriangleDeletion;
  throw std::invalid_argument("mode must be rejection or triangle-deletion");
}

}  // namespace

PYBIND11_MODULE(_hardcore, m) {
  m.doc() =
      "exact independence-polynomial counting and numerical verification for "
      "the hard-core model on triangle-free graphs";

  // ---- graphs ----
  py::class_<Graph>(m, "Graph")
      .def(py::init<int>(), py::arg("n") = 0)
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("average_degree", &Graph::average_degree)
      .def("degree", &Graph::degree)
      .def("neighbors",
           [](const Graph& g, int v) {
             auto s = g.neighbors(v);
             return std::vector<int>(s.begin(), s.end());
           })
      .def("has_edge", &Graph::has_edge)
      .def("edges", &Graph::edges)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n()) +
               ", m=" + std::to_string(g.m()) + ")";
      });

  m.def(
      "from_edge_list",
      [](int n, const std::vector<std::pair<int, int>>& edges) {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (auto [u, v] : edges) es.push_back({u, v});
        return from_edge_list(n, es);
      },
      py::arg("n"), py::arg("edges"));
  m.def("parse_graph", &parse_graph);
  m.def("format_graph", &format_graph);
  m.def("count_triangles", &count_triangles);
  m.def("is_triangle_free", &is_triangle_free);
  m.def("delete_vertex", &delete_vertex);
  m.def("delete_closed_neighborhood", &delete_closed_neighborhood);
  m.def("induced_subgraph", &induced_subgraph);
  m.def("connected_components", &connected_components);
  m.def("labeled_graph_count", &labeled_graph_count);
  m.def(
      "enumerate_labeled_graphs",
      [](int n, bool triangle_free) {
        auto en = std::make_shared<LabeledGraphEnumerator>(n, triangle_free);
        return py::cpp_function([en]() -> py::object {
          if (auto g = en->next()) return py::cast(*g);
          return py::none();
        });
      },
      py::arg("n"), py::arg("triangle_free") = false,
      "returns a nullary callable that yields graphs and then None");

  // ---- exact counting ----
  m.def(
      "independence_polynomial",
      [](const Graph& g) { return from_poly(independence_polynomial(g)); },
      py::arg("graph"));
  m.def(
      "brute_force_polynomial",
      [](const Graph& g) { return from_poly(brute_force_polynomial(g)); },
      py::arg("graph"));
  m.def("independent_set_count", [](const std::vector<py::int_>& p) {
    return to_pyint(independent_set_count(to_poly(p)));
  });
  m.def("independence_number", [](const std::vector<py::int_>& p) {
    return independence_number(to_poly(p));
  });
  m.def(
      "log_z",
      [](const std::vector<py::int_>& p, const py::object& lambda) {
        return log_z(to_poly(p), to_mpq(lambda));
      },
      py::arg("poly"), py::arg("lam"));
  m.def(
      "occupancy_fraction",
      [](const std::vector<py::int_>& p, const py::object& lambda) {
        return occupancy_fraction(to_poly(p), to_mpq(lambda));
      },
      py::arg("poly"), py::arg("lam"));
  m.def(
      "occupancy_fraction_exact",
      [](const std::vector<py::int_>& p, const py::object& lambda) {
        return to_pyfraction(occupancy_fraction_exact(to_poly(p), to_mpq(lambda)));
      },
      py::arg("poly"), py::arg("lam"));

  // ---- special functions ----
  m.def("lambert_w", &lambert_w);
  m.def("lambert_w_deriv", &lambert_w_deriv);
  m.def("c_lambda", &c_lambda);
  m.def("f_lambda", &f_lambda, py::arg("lam"), py::arg("x"));
  m.def("f_lambda_deriv", &f_lambda_deriv, py::arg("lam"), py::arg("x"));
  m.def("upper_rate_phi", &upper_rate_phi, py::arg("lam"), py::arg("d"));
  m.def("shearer_rate", &shearer_rate);
  m.def("shearer_rate_deriv", &shearer_rate_deriv);
  m.def("shearer_sharpness_eta", &shearer_sharpness_eta);
  m.def("conjecture_rhs", &conjecture_rhs, py::arg("lam"), py::arg("d"));

  // ---- verification ----
  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("log_min", &GridSpec::log_min)
      .def_readwrite("log_max", &GridSpec::log_max)
      .def_readwrite("log_points", &GridSpec::log_points)
      .def_readwrite("lin_min", &GridSpec::lin_min)
      .def_readwrite("lin_max", &GridSpec::lin_max)
      .def_readwrite("lin_points", &GridSpec::lin_points)
      .def_readwrite("include_special", &GridSpec::include_special);
  py::class_<LemmaCheckReport>(m, "LemmaCheckReport")
      .def_readonly("lam", &LemmaCheckReport::lambda)
      .def_readonly("claim", &LemmaCheckReport::claim)
      .def_readonly("grid_spec", &LemmaCheckReport::grid_spec)
      .def_readonly("worst_margin", &LemmaCheckReport::worst_margin)
      .def_readonly("worst_x", &LemmaCheckReport::worst_x)
      .def_readonly("passed", &LemmaCheckReport::passed)
      .def_readonly("tolerance", &LemmaCheckReport::tolerance)
      .def("__repr__", [](const LemmaCheckReport& r) {
        return "LemmaCheckReport(" + format_report_row(r) + ")";
      });
  py::enum_<InequalityMode>(m, "InequalityMode")
      .value("DIRECT", InequalityMode::kDirect)
      .value("R_FUNCTION", InequalityMode::kRFunction);
  m.def("build_grid", &build_grid, py::arg("spec"), py::arg("lam"));
  m.def("check_monotone", &check_monotone, py::arg("lam"),
        py::arg("spec") = GridSpec{});
  m.def("check_convex", &check_convex, py::arg("lam"),
        py::arg("spec") = GridSpec{});
  m.def("check_inequality", &check_inequality, py::arg("lam"),
        py::arg("mode") = InequalityMode::kDirect, py::arg("spec") = GridSpec{});
  m.def("certify_lambda", &certify_lambda, py::arg("lam"),
        py::arg("spec") = GridSpec{});
  m.def("estimate_lambda_max", &estimate_lambda_max,
        py::arg("resolution") = 1e-3, py::arg("spec") = GridSpec{});
  m.def("edgeless_crossover", &edgeless_crossover);
  m.def("check_hypothesis", &check_hypothesis, py::arg("g"), py::arg("g_deriv"),
        py::arg("lam"), py::arg("spec") = GridSpec{});
  m.def("check_hypothesis_fd", &check_hypothesis_fd, py::arg("g"), py::arg("lam"),
        py::arg("spec") = GridSpec{});

  // ---- experiments ----
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("n", &ExperimentConfig::n)
      .def_readwrite("d", &ExperimentConfig::d)
      .def_property(
          "lam",
          [](const ExperimentConfig& c) { return to_pyfraction(c.lambda); },
          [](ExperimentConfig& c, const py::object& v) { c.lambda = to_mpq(v); })
      .def_readwrite("replicas", &ExperimentConfig::replicas)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("tf_mode", &ExperimentConfig::tf_mode)
      .def_readwrite("mcmc_steps", &ExperimentConfig::mcmc_steps)
      .def_readwrite("burn_in", &ExperimentConfig::burn_in)
      .def_readwrite("max_tries", &ExperimentConfig::max_tries);
  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("replica", &ExperimentResult::replica)
      .def_readonly("replica_seed", &ExperimentResult::replica_seed)
      .def_readonly("n", &ExperimentResult::n)
      .def_readonly("realized_avg_degree", &ExperimentResult::realized_avg_degree)
      .def_readonly("triangles_removed", &ExperimentResult::triangles_removed)
      .def_readonly("log_z_per_vertex", &ExperimentResult::log_z_per_vertex)
      .def_readonly("alpha_per_vertex", &ExperimentResult::alpha_per_vertex)
      .def_readonly("occupancy_per_vertex",
                    &ExperimentResult::occupancy_per_vertex);
  py::class_<ExperimentSummary>(m, "ExperimentSummary")
      .def_readonly("min_log_z", &ExperimentSummary::min_log_z)
      .def_readonly("median_log_z", &ExperimentSummary::median_log_z)
      .def_readonly("max_log_z", &ExperimentSummary::max_log_z)
      .def_readonly("min_lower_margin", &ExperimentSummary::min_lower_margin)
      .def_readonly("median_upper_gap", &ExperimentSummary::median_upper_gap);
  py::enum_<TriangleFreeMode>(m, "TriangleFreeMode")
      .value("REJECTION", TriangleFreeMode::kRejection)
      .value("TRIANGLE_DELETION", TriangleFreeMode::kTriangleDeletion);
  m.def("derive_seed", &derive_seed);
  m.def("sample_gnp", &sample_gnp, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def(
      "make_triangle_free",
      [](const Graph& g, const std::string& mode, std::uint64_t seed,
         int max_tries) {
        auto out = make_triangle_free(g, parse_mode(mode), seed, max_tries);
        return py::make_tuple(out.graph, out.tries, out.edges_removed);
      },
      py::arg("graph"), py::arg("mode") = "rejection", py::arg("seed") = 1,
      py::arg("max_tries") = 2000,
      "returns (graph, tries, edges_removed)");
  m.def(
      "sharpness_experiment",
      [](const ExperimentConfig& cfg) {
        ExperimentSummary summary;
        auto rows = sharpness_experiment(cfg, &summary);
        return py::make_tuple(rows, summary);
      },
      py::arg("config"), "returns (rows, summary)");
  py::class_<GlauberEstimate>(m, "GlauberEstimate")
      .def_readonly("occupancy", &GlauberEstimate::occupancy)
      .def_readonly("standard_error", &GlauberEstimate::standard_error)
      .def_readonly("steps", &GlauberEstimate::steps)
      .def_readonly("burn_in", &GlauberEstimate::burn_in);
  m.def("glauber_occupancy", &glauber_occupancy, py::arg("graph"),
        py::arg("lam"), py::arg("steps") = 0, py::arg("burn_in") = 0,
        py::arg("seed") = 1, py::arg("validate_chain") = false);
  py::class_<ConjectureRecord>(m, "ConjectureRecord")
      .def_readonly("slack", &ConjectureRecord::slack)
      .def_property_readonly(
          "lam",
          [](const ConjectureRecord& r) { return to_pyfraction(r.lambda); })
      .def_readonly("n", &ConjectureRecord::n)
      .def_readonly("edges", &ConjectureRecord::edges)
      .def_readonly("occupancy", &ConjectureRecord::occupancy);
  py::class_<ConjectureScanReport>(m, "ConjectureScanReport")
      .def_readonly("minimum", &ConjectureScanReport::minimum)
      .def_readonly("smallest", &ConjectureScanReport::smallest)
      .def_readonly("evaluations", &ConjectureScanReport::evaluations);
  m.def(
      "conjecture_scan",
      [](int n_max, const std::vector<py::object>& lambdas, int keep) {
        std::vector<mpq_class> ls;
        for (const auto& l : lambdas) ls.push_back(to_mpq(l));
        return conjecture_scan(n_max, ls, keep);
      },
      py::arg("n_max"), py::arg("lambdas"), py::arg("keep") = 100);
  py::class_<LimitRatioRow>(m, "LimitRatioRow")
      .def_readonly("lam", &LimitRatioRow::lambda)
      .def_readonly("ratio", &LimitRatioRow::ratio)
      .def_readonly("gap", &LimitRatioRow::gap);
  m.def("limit_ratio_check", &limit_ratio_check, py::arg("graph"),
        py::arg("lambdas"));
}
