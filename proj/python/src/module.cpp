#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "edgerec/activity.hpp"
#include "edgerec/benchgen.hpp"
#include "edgerec/diagnostics.hpp"
#include "edgerec/errors.hpp"
#include "edgerec/graph.hpp"
#include "edgerec/io.hpp"
#include "edgerec/recover.hpp"
#include "edgerec/tasks.hpp"

namespace py = pybind11;
using namespace edgerec;

namespace {

SolverConfig make_config(const std::string& method, std::optional<double> lambda, double tol, int max_sweeps,
                         double svd_cutoff, int grid_size) {
    SolverConfig cfg;
    cfg.method = parse_method(method);
    cfg.lambda = lambda;
    cfg.tol = tol;
    cfg.max_sweeps = max_sweeps;
    cfg.svd_cutoff = svd_cutoff;
    cfg.lambda_grid_size = grid_size;
    cfg.validate();
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Recover temporal edge activity from node activity on a static graph";
    m.attr("__version__") = EDGEREC_VERSION;

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<UndefinedError>(m, "UndefinedError", PyExc_ValueError);
    (void)validation;

    py::class_<Graph>(m, "Graph")
        .def(py::init([](const std::vector<std::pair<std::string, std::string>>& pairs,
                         const std::vector<std::string>& extra_nodes) {
                 std::vector<IdPair> ids(pairs.begin(), pairs.end());
                 return build_graph(ids, extra_nodes);
             }),
             py::arg("edges"), py::arg("extra_nodes") = std::vector<std::string>{},
             "Canonical graph from (source, target) id pairs; duplicates collapse.")
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("m", &Graph::m)
        .def_property_readonly("node_ids", &Graph::node_ids)
        .def_property_readonly("edges",
                               [](const Graph& g) {
                                   std::vector<std::pair<Index, Index>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def_property_readonly("degrees", &Graph::degrees)
        .def("to_json", [](const Graph& g) { return io::graph_to_json(g); })
        .def_static("from_json", [](const std::string& text) { return io::graph_from_json(text); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n()) + ", m=" + std::to_string(g.m()) + ")";
        });

    m.def("incidence", [](const Graph& g) { return incidence(g).sparse(); }, py::arg("graph"),
          "n x m incidence matrix as scipy.sparse.csc_matrix.");
    m.def("line_graph", &line_graph, py::arg("graph"));
    m.def(
        "project",
        [](const Graph& g, const Matrix& edges) { return project(incidence(g), EdgeActivityMatrix(edges)).values(); },
        py::arg("graph"), py::arg("edges"), "Node activity N = B E.");

    py::class_<RecoveryResult>(m, "RecoveryResult")
        .def_readonly("estimate", &RecoveryResult::estimate)
        .def_property_readonly("method", [](const RecoveryResult& r) { return std::string(to_string(r.method)); })
        .def_readonly("lambda_used", &RecoveryResult::lambda_used)
        .def_readonly("sweeps", &RecoveryResult::sweeps)
        .def_readonly("converged", &RecoveryResult::converged)
        .def_readonly("kkt_residual", &RecoveryResult::kkt_residual)
        .def_readonly("fit_residual", &RecoveryResult::fit_residual)
        .def_readonly("objective", &RecoveryResult::objective);

    m.def(
        "recover",
        [](const Graph& g, const Matrix& nodes, const std::string& method, std::optional<double> lambda, double tol,
           int max_sweeps, double svd_cutoff, int grid_size) {
            const auto cfg = make_config(method, lambda, tol, max_sweeps, svd_cutoff, grid_size);
            return recover(incidence(g), NodeActivityMatrix(nodes), cfg);
        },
        py::arg("graph"), py::arg("nodes"), py::arg("method") = "sparse", py::arg("lam") = py::none(),
        py::arg("tol") = 1e-6, py::arg("max_sweeps") = 1000, py::arg("svd_cutoff") = 0.0, py::arg("grid_size") = 50,
        "Recover an m x T edge activity estimate. lam=None selects the penalty by BIC.");

    py::class_<LambdaPathPoint>(m, "LambdaPathPoint")
        .def_readonly("lam", &LambdaPathPoint::lambda)
        .def_readonly("fit_residual", &LambdaPathPoint::fit_residual)
        .def_readonly("active_groups", &LambdaPathPoint::active_groups)
        .def_readonly("nonzeros", &LambdaPathPoint::nonzeros)
        .def_readonly("criterion", &LambdaPathPoint::criterion);
    py::class_<LambdaSelection>(m, "LambdaSelection")
        .def_readonly("lam", &LambdaSelection::lambda)
        .def_readonly("path", &LambdaSelection::path)
        .def_readonly("best", &LambdaSelection::best);
    m.def(
        "select_lambda",
        [](const Graph& g, const Matrix& nodes, double tol, int max_sweeps, int grid_size) {
            const auto cfg = make_config("sparse", std::nullopt, tol, max_sweeps, 0.0, grid_size);
            return select_lambda(incidence(g), NodeActivityMatrix(nodes), cfg);
        },
        py::arg("graph"), py::arg("nodes"), py::arg("tol") = 1e-6, py::arg("max_sweeps") = 1000,
        py::arg("grid_size") = 50);
    m.def(
        "lambda_max", [](const Graph& g, const Matrix& nodes) { return lambda_max(incidence(g), nodes); },
        py::arg("graph"), py::arg("nodes"));
    m.def(
        "kkt_residual",
        [](const Graph& g, const Matrix& nodes, const Matrix& est, double lambda) {
            return kkt_residual(incidence(g), nodes, est, lambda);
        },
        py::arg("graph"), py::arg("nodes"), py::arg("estimate"), py::arg("lam"));

    m.def("tie_strengths", &tie_strengths, py::arg("activity"));
    m.def(
        "kernel_baseline", [](const Matrix& nodes, const Graph& g) { return kernel_baseline(NodeActivityMatrix(nodes), g); },
        py::arg("nodes"), py::arg("graph"));
    m.def("disparity_backbone", &disparity_backbone, py::arg("graph"), py::arg("weights"), py::arg("alpha"));
    m.def("default_alpha_grid", &default_alpha_grid);
    m.def(
        "roc_curve",
        [](const std::vector<bool>& truth, const BackboneScorer& scorer, std::optional<std::vector<double>> grid) {
            RocCurve curve = grid ? roc_curve(truth, scorer, *grid) : roc_curve(truth, scorer);
            std::vector<std::tuple<double, double, double>> out;
            for (const auto& p : curve) out.emplace_back(p.fpr, p.tpr, p.alpha);
            return out;
        },
        py::arg("truth"), py::arg("scorer"), py::arg("alpha_grid") = py::none(),
        "List of (fpr, tpr, alpha) points, endpoints included.");
    m.def(
        "auc",
        [](const std::vector<std::tuple<double, double, double>>& points) {
            RocCurve curve;
            for (const auto& [f, t, a] : points) curve.push_back({f, t, a});
            return auc(curve);
        },
        py::arg("curve"));
    m.def(
        "pearson", [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return pearson(flat(a), flat(b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "spearman", [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return spearman(flat(a), flat(b)); },
        py::arg("a"), py::arg("b"));

    py::class_<ErrorSeries>(m, "ErrorSeries")
        .def_readonly("absolute", &ErrorSeries::absolute)
        .def_readonly("relative", &ErrorSeries::relative)
        .def_readonly("frobenius", &ErrorSeries::frobenius)
        .def_readonly("truth_norm", &ErrorSeries::truth_norm)
        .def_readonly("bound", &ErrorSeries::bound)
        .def_readonly("bound_satisfied", &ErrorSeries::bound_satisfied);
    m.def("error_series", &error_series, py::arg("truth"), py::arg("estimate"), py::arg("nodes") = -1);
    m.def("expected_active_nodes", &expected_active_nodes, py::arg("graph"), py::arg("s"));
    m.def(
        "expected_active_nodes_mc",
        [](const Graph& g, Index s, int draws, std::uint64_t seed) {
            const auto est = expected_active_nodes_mc(g, s, draws, seed);
            return std::make_pair(est.mean, est.standard_error);
        },
        py::arg("graph"), py::arg("s"), py::arg("draws") = 10000, py::arg("seed") = 0,
        "(mean, standard_error) of a Monte Carlo estimate.");
    m.def("degree_assortativity", &degree_assortativity, py::arg("graph"));

    py::class_<ReVerdict>(m, "ReVerdict")
        .def_property_readonly("components",
                               [](const ReVerdict& v) {
                                   std::vector<std::string> out;
                                   for (auto k : v.components) out.emplace_back(to_string(k));
                                   return out;
                               })
        .def_readonly("holds", &ReVerdict::holds)
        .def_readonly("lambda_min", &ReVerdict::lambda_min)
        .def_readonly("consistent", &ReVerdict::consistent);
    m.def("re_check", &re_check, py::arg("graph"), py::arg("spectral_cap") = 2000);

    m.def(
        "synth",
        [](const std::string& topology, Index nodes, Index edges, bool odd_cycle, Index timesteps, double density,
           const std::string& values, double low, double high, double p, std::uint64_t seed) {
            ScenarioSpec spec;
            spec.topology = parse_topology(topology);
            spec.nodes = nodes;
            spec.edges = edges;
            spec.odd_cycle = odd_cycle;
            spec.timesteps = timesteps;
            spec.activity_density = density;
            spec.value_dist = parse_value_dist(values);
            spec.uniform_low = low;
            spec.uniform_high = high;
            spec.geometric_p = p;
            spec.seed = seed;
            Graph g = gen_graph(spec);
            Matrix e = gen_activity(g, spec).values();
            return std::make_pair(std::move(g), std::move(e));
        },
        py::arg("topology") = "tree", py::arg("nodes") = 10, py::arg("edges") = 0, py::arg("odd_cycle") = true,
        py::arg("timesteps") = 10, py::arg("density") = 0.1, py::arg("values") = "unit", py::arg("uniform_low") = 0.5,
        py::arg("uniform_high") = 1.5, py::arg("geometric_p") = 0.5, py::arg("seed") = 0,
        "Seeded (graph, edge activity) pair.");
}
