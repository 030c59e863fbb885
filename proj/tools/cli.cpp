#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "edgerec/activity.hpp"
#include "edgerec/benchgen.hpp"
#include "edgerec/diagnostics.hpp"
#include "edgerec/errors.hpp"
#include "edgerec/io.hpp"
#include "edgerec/recover.hpp"
#include "edgerec/tasks.hpp"

namespace edgerec::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string fmt(double value) { return io::format_double(value); }
std::string fmt(Index value) { return std::to_string(value); }
std::string fmt(const std::optional<double>& value) { return value ? fmt(*value) : ""; }

ordered_json opt(const std::optional<double>& value) {
    return value ? ordered_json(*value) : ordered_json(nullptr);
}

/// Every report starts with the command, library version and the effective
/// configuration of the subcommand in config-file syntax.
ordered_json report_header(const CLI::App& sub) {
    ordered_json report;
    report["command"] = sub.get_name();
    report["version"] = EDGEREC_VERSION;
    report["config"] = sub.config_to_str(true, false);
    return report;
}

void write_report(const fs::path& dir, const std::string& name, const ordered_json& report) {
    io::write_file(dir / name, report.dump(2) + "\n");
}

struct GraphInput {
    Graph graph;
    std::string hash;
};

GraphInput load_graph(const std::string& path) {
    return {io::read_graph(path), io::file_sha256(path)};
}

io::LoadedMatrix load_grid(const std::string& path, const GraphInput& g, Index expected_rows, const char* role) {
    auto loaded = io::read_matrix(path, g.hash);
    if (loaded.values.rows() != expected_rows) {
        throw ValidationError(std::string(role) + " " + path + " has " + std::to_string(loaded.values.rows()) +
                              " rows, expected " + std::to_string(expected_rows));
    }
    return loaded;
}

EdgeActivityMatrix load_edges(const std::string& path, const GraphInput& g) {
    auto loaded = load_grid(path, g, g.graph.m(), "edge activity");
    return EdgeActivityMatrix(std::move(loaded.values), loaded.meta.window);
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
    std::string events;
    double t0 = 0.0;
    double dt = 1.0;
    Index timesteps = 0;
    std::string out_dir;
};

void add_ingest(CLI::App& app, IngestOptions& o) {
    auto* sub = app.add_subcommand("ingest", "Bin an events file into a graph and edge activity matrix");
    sub->add_option("--events", o.events, "CSV with header source,target,time[,count]")->required()->check(CLI::ExistingFile);
    sub->add_option("--t0", o.t0, "Time origin")->capture_default_str();
    sub->add_option("--dt", o.dt, "Window width")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--T", o.timesteps, "Number of windows")->required()->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

void run_ingest(const CLI::App& sub, const IngestOptions& o) {
    const auto events = io::read_events(o.events);
    const auto windowed = window_events(events, o.t0, o.dt, o.timesteps);
    const fs::path dir = o.out_dir;
    io::write_graph(dir / "graph.json", windowed.graph);
    const std::string hash = io::file_sha256(dir / "graph.json");
    io::write_matrix(dir / "E.csv", windowed.activity.values(),
                     {io::MatrixKind::Edge, windowed.graph.m(), o.timesteps, windowed.activity.window(), hash});

    auto report = report_header(sub);
    report["events"] = events.size();
    report["dropped"] = windowed.dropped;
    report["n"] = windowed.graph.n();
    report["m"] = windowed.graph.m();
    report["T"] = o.timesteps;
    write_report(dir, "ingest_report.json", report);
}

// ---------------------------------------------------------------- project

struct ProjectOptions {
    std::string graph;
    std::string edges;
    std::string out_dir;
};

void add_project(CLI::App& app, ProjectOptions& o) {
    auto* sub = app.add_subcommand("project", "Aggregate edge activity to node activity (N = B E)");
    sub->add_option("--graph", o.graph, "Graph JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--edges", o.edges, "Edge activity grid")->required()->check(CLI::ExistingFile);
    sub->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

void run_project(const CLI::App& sub, const ProjectOptions& o) {
    const auto g = load_graph(o.graph);
    const auto e = load_edges(o.edges, g);
    const auto n = project(incidence(g.graph), e);
    const fs::path dir = o.out_dir;
    io::write_matrix(dir / "N.csv", n.values(), {io::MatrixKind::Node, g.graph.n(), n.timesteps(), n.window(), g.hash});

    auto report = report_header(sub);
    report["n"] = g.graph.n();
    report["m"] = g.graph.m();
    report["T"] = n.timesteps();
    report["reduction_factor"] = g.graph.n() > 0 ? static_cast<double>(g.graph.m()) / static_cast<double>(g.graph.n()) : 0.0;
    write_report(dir, "project_report.json", report);
}

// ---------------------------------------------------------------- recover

struct RecoverOptions {
    std::string graph;
    std::string nodes;
    std::string method = "sparse";
    std::string lambda = "auto";
    double tol = 1e-6;
    int max_sweeps = 1000;
    double svd_cutoff = 0.0;
    int grid_size = 50;
    std::uint64_t seed = 0;
    std::string out_dir;
};

void add_recover(CLI::App& app, RecoverOptions& o) {
    auto* sub = app.add_subcommand("recover", "Recover edge activity from node activity");
    sub->add_option("--graph", o.graph, "Graph JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--nodes", o.nodes, "Node activity grid")->required()->check(CLI::ExistingFile);
    sub->add_option("--method", o.method, "least-norm or sparse")
        ->capture_default_str()
        ->check(CLI::IsMember({"least-norm", "sparse"}));
    sub->add_option("--lambda", o.lambda, "Group-lasso penalty, or 'auto'")->capture_default_str();
    sub->add_option("--tol", o.tol, "Relative block-change tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-sweeps", o.max_sweeps, "Coordinate-descent sweep limit")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--svd-cutoff", o.svd_cutoff, "Relative singular-value cutoff (0 = max(n,m) eps)")->capture_default_str();
    sub->add_option("--grid-size", o.grid_size, "Penalty grid size for 'auto'")->capture_default_str()->check(CLI::Range(2, 100000));
    sub->add_option("--seed", o.seed, "Seed (reserved for randomized sweeps)")->capture_default_str();
    sub->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

void run_recover(const CLI::App& sub, const RecoverOptions& o) {
    SolverConfig cfg;
    cfg.method = parse_method(o.method);
    cfg.tol = o.tol;
    cfg.max_sweeps = o.max_sweeps;
    cfg.svd_cutoff = o.svd_cutoff;
    cfg.lambda_grid_size = o.grid_size;
    cfg.seed = o.seed;
    if (o.lambda != "auto") {
        try {
            std::size_t used = 0;
            cfg.lambda = std::stod(o.lambda, &used);
            if (used != o.lambda.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw CLI::ValidationError("--lambda", "expected a number or 'auto', got '" + o.lambda + "'");
        }
    }
    cfg.validate();

    const auto g = load_graph(o.graph);
    auto loaded = load_grid(o.nodes, g, g.graph.n(), "node activity");
    const NodeActivityMatrix nodes(std::move(loaded.values), loaded.meta.window);
    const auto b = incidence(g.graph);
    const fs::path dir = o.out_dir;
    auto report = report_header(sub);

    RecoveryResult result;
    if (cfg.method == Method::LeastNorm) {
        result = least_norm(b, nodes, cfg);
    } else if (!cfg.lambda) {
        auto selection = select_lambda(b, nodes, cfg);
        io::Table path({"lambda", "fit_residual", "active_groups", "nonzeros", "criterion"});
        for (const auto& p : selection.path) {
            path.add_row({fmt(p.lambda), fmt(p.fit_residual), fmt(p.active_groups), fmt(p.nonzeros), fmt(p.criterion)});
        }
        io::write_file(dir / "lambda_path.csv", path.to_csv());
        report["lambda_path_rows"] = selection.path.size();
        result = std::move(selection.best);
    } else {
        result = sparse_recover(b, nodes, cfg);
    }

    io::write_matrix(dir / "Ehat.csv", result.estimate,
                     {io::MatrixKind::Estimate, g.graph.m(), nodes.timesteps(), nodes.window(), g.hash});
    if (!result.objective.empty()) {
        io::Table objective({"sweep", "objective"});
        for (std::size_t k = 0; k < result.objective.size(); ++k) {
            objective.add_row({std::to_string(k + 1), fmt(result.objective[k])});
        }
        io::write_file(dir / "objective.csv", objective.to_csv());
    }

    report["method"] = std::string(to_string(result.method));
    report["lambda_used"] = result.lambda_used;
    report["sweeps"] = result.sweeps;
    report["converged"] = result.converged;
    report["kkt_residual"] = result.kkt_residual;
    report["fit_residual"] = result.fit_residual;
    report["node_activity_norm"] = nodes.values().norm();
    write_report(dir, "recover_report.json", report);
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
    std::string graph;
    std::string truth;
    std::string estimate;
    double activity_eps = 0.0;
    std::string out_dir;
};

void add_evaluate(CLI::App& app, EvaluateOptions& o) {
    auto* sub = app.add_subcommand("evaluate", "Compare a recovered matrix with the true edge activity");
    sub->add_option("--graph", o.graph, "Graph JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--truth", o.truth, "True edge activity grid")->required()->check(CLI::ExistingFile);
    sub->add_option("--estimate", o.estimate, "Recovered edge activity grid")->required()->check(CLI::ExistingFile);
    sub->add_option("--activity-eps", o.activity_eps, "Threshold for counting recovered entries as active")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

ordered_json correlation_or_null(std::span<const double> a, std::span<const double> b,
                                 double (*fn)(std::span<const double>, std::span<const double>)) {
    try {
        return fn(a, b);
    } catch (const UndefinedError&) {
        return nullptr;
    }
}

void run_evaluate(const CLI::App& sub, const EvaluateOptions& o) {
    const auto g = load_graph(o.graph);
    const auto truth = load_edges(o.truth, g);
    const auto estimate = load_grid(o.estimate, g, g.graph.m(), "estimate");
    if (estimate.values.cols() != truth.timesteps()) throw ValidationError("estimate and truth differ in T");

    const auto errors = error_series(truth.values(), estimate.values, g.graph.n());
    const auto truth_stats = activity_stats(g.graph, truth.values());
    const auto estimate_stats = activity_stats(g.graph, estimate.values, o.activity_eps);

    io::Table table({"t", "s_t", "n_t", "s_frac", "n_frac", "s_hat_t", "abs_err", "rel_err"});
    for (Index t = 0; t < truth.timesteps(); ++t) {
        const auto k = static_cast<std::size_t>(t);
        table.add_row({fmt(t), fmt(truth_stats.active_edges[k]), fmt(truth_stats.active_nodes[k]),
                       fmt(truth_stats.edge_fraction[k]), fmt(truth_stats.node_fraction[k]),
                       fmt(estimate_stats.active_edges[k]), fmt(errors.absolute[k]), fmt(errors.relative[k])});
    }
    const fs::path dir = o.out_dir;
    io::write_file(dir / "errors.csv", table.to_csv());

    const Vector w = tie_strengths(truth.values());
    const Vector w_hat = tie_strengths(estimate.values);
    auto report = report_header(sub);
    report["pearson"] = correlation_or_null(flat(truth.values()), flat(estimate.values), &pearson);
    report["spearman"] = correlation_or_null(flat(truth.values()), flat(estimate.values), &spearman);
    report["tie_strength_pearson"] = correlation_or_null(flat(w), flat(w_hat), &pearson);
    report["tie_strength_spearman"] = correlation_or_null(flat(w), flat(w_hat), &spearman);
    report["frobenius_error"] = errors.frobenius;
    report["truth_norm"] = errors.truth_norm;
    report["relative_frobenius_error"] = errors.truth_norm > 0.0 ? ordered_json(errors.frobenius / errors.truth_norm)
                                                                 : ordered_json(nullptr);
    report["bound"] = opt(errors.bound);
    report["bound_satisfied"] = errors.bound ? ordered_json(errors.bound_satisfied) : ordered_json(nullptr);
    write_report(dir, "evaluate_report.json", report);
}

// ---------------------------------------------------------------- backbone

struct BackboneOptions {
    std::string graph;
    std::string truth;
    std::string estimate;
    std::vector<double> alphas{0.125};
    std::vector<double> alpha_grid;
    std::string out_dir;
};

void add_backbone(CLI::App& app, BackboneOptions& o) {
    auto* sub = app.add_subcommand("backbone", "Disparity-filter backbones, ROC and AUC");
    sub->add_option("--graph", o.graph, "Graph JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--truth", o.truth, "Edge activity grid used for the reference backbone")->required()->check(CLI::ExistingFile);
    sub->add_option("--estimate", o.estimate, "Recovered edge activity grid to score")->check(CLI::ExistingFile);
    sub->add_option("--alpha", o.alphas, "Backbone strength(s) for the reference")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0))
        ->delimiter(',');
    sub->add_option("--alpha-grid", o.alpha_grid, "Scoring alphas for ROC sweeps (default: 50 log-spaced in [1e-4, 0.999])")
        ->check(CLI::Range(0.0, 1.0))
        ->delimiter(',');
    sub->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

void run_backbone(const CLI::App& sub, const BackboneOptions& o) {
    const auto g = load_graph(o.graph);
    const auto truth = load_edges(o.truth, g);
    std::optional<Matrix> estimate;
    if (!o.estimate.empty()) {
        estimate = load_grid(o.estimate, g, g.graph.m(), "estimate").values;
        if (estimate->cols() != truth.timesteps()) throw ValidationError("estimate and truth differ in T");
    }
    const auto grid = o.alpha_grid.empty() ? default_alpha_grid() : o.alpha_grid;

    const Vector w = tie_strengths(truth.values());
    // Negative least-norm entries can make a recovered weight negative; the
    // filter needs nonnegative weights, so they are clipped at zero.
    const Vector w_hat = estimate ? Vector(tie_strengths(*estimate).cwiseMax(0.0)) : Vector();

    std::vector<std::string> columns{"edge", "source", "target", "alpha", "weight", "backbone"};
    if (estimate) {
        columns.emplace_back("estimate_weight");
        columns.emplace_back("estimate_backbone");
    }
    io::Table labels(columns);
    io::Table roc({"alpha_b", "alpha_prime", "fpr", "tpr"});
    ordered_json summaries = ordered_json::array();
    for (double alpha : o.alphas) {
        const auto truth_labels = disparity_backbone(g.graph, w, alpha);
        const auto hat_labels = estimate ? disparity_backbone(g.graph, w_hat, alpha) : std::vector<bool>{};
        for (Index j = 0; j < g.graph.m(); ++j) {
            const auto k = static_cast<std::size_t>(j);
            const Edge& e = g.graph.edge(j);
            std::vector<std::string> row{fmt(j), g.graph.node_ids()[static_cast<std::size_t>(e.u)],
                                         g.graph.node_ids()[static_cast<std::size_t>(e.v)], fmt(alpha), fmt(w(j)),
                                         truth_labels[k] ? "1" : "0"};
            if (estimate) {
                row.push_back(fmt(w_hat(j)));
                row.emplace_back(hat_labels[k] ? "1" : "0");
            }
            labels.add_row(std::move(row));
        }
        const auto positives = std::count(truth_labels.begin(), truth_labels.end(), true);
        ordered_json summary;
        summary["alpha"] = alpha;
        summary["positives"] = positives;
        summary["negatives"] = static_cast<std::ptrdiff_t>(truth_labels.size()) - positives;
        summary["auc"] = nullptr;
        if (estimate) {
            const auto rates = confusion_rates(truth_labels, hat_labels);
            summary["matched_fpr"] = rates.fpr;
            summary["matched_tpr"] = rates.tpr;
            if (positives > 0 && positives < static_cast<std::ptrdiff_t>(truth_labels.size())) {
                const auto curve = roc_curve(
                    truth_labels, [&](double a) { return disparity_backbone(g.graph, w_hat, a); }, grid);
                for (const auto& p : curve) roc.add_row({fmt(alpha), fmt(p.alpha), fmt(p.fpr), fmt(p.tpr)});
                summary["auc"] = auc(curve);
            }
        }
        summaries.push_back(summary);
    }
    const fs::path dir = o.out_dir;
    io::write_file(dir / "labels.csv", labels.to_csv());
    if (estimate) io::write_file(dir / "roc.csv", roc.to_csv());
    auto report = report_header(sub);
    report["alphas"] = summaries;
    write_report(dir, "backbone_report.json", report);
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseOptions {
    std::string graph;
    std::string edges;
    std::string estimate;
    double activity_eps = 0.0;
    Index spectral_cap = 2000;
    std::string out_dir;
};

void add_diagnose(CLI::App& app, DiagnoseOptions& o) {
    auto* sub = app.add_subcommand("diagnose", "Activity statistics, null models and recoverability checks");
    sub->add_option("--graph", o.graph, "Graph JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--edges", o.edges, "Edge activity grid")->required()->check(CLI::ExistingFile);
    sub->add_option("--estimate", o.estimate, "Recovered edge activity grid")->check(CLI::ExistingFile);
    sub->add_option("--activity-eps", o.activity_eps, "Threshold for counting recovered entries as active")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--spectral-cap", o.spectral_cap, "Largest m for the dense eigenvalue check")->capture_default_str();
    sub->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

ordered_json verdict_json(const ReVerdict& v) {
    ordered_json out;
    out["holds"] = v.holds;
    out["lambda_min"] = opt(v.lambda_min);
    out["consistent"] = v.consistent;
    ordered_json kinds = ordered_json::array();
    for (auto kind : v.components) kinds.push_back(std::string(to_string(kind)));
    out["components"] = kinds;
    return out;
}

void run_diagnose(const CLI::App& sub, const DiagnoseOptions& o) {
    const auto g = load_graph(o.graph);
    const auto e = load_edges(o.edges, g);
    std::optional<Matrix> estimate;
    if (!o.estimate.empty()) {
        estimate = load_grid(o.estimate, g, g.graph.m(), "estimate").values;
        if (estimate->cols() != e.timesteps()) throw ValidationError("estimate and edge activity differ in T");
    }

    const auto stats = activity_stats(g.graph, e.values());
    const auto nulls = node_activation_nulls(g.graph, e.values());
    const auto static_verdict = re_check(g.graph, o.spectral_cap);
    std::optional<ErrorSeries> errors;
    std::optional<ActivityStats> estimate_stats;
    if (estimate) {
        errors = error_series(e.values(), *estimate, g.graph.n());
        estimate_stats = activity_stats(g.graph, *estimate, o.activity_eps);
    }

    std::vector<std::string> columns{"t", "s_t", "n_t", "s_frac", "n_frac", "mean_degree", "null_n_t",
                                     "assortativity", "re_holds", "re_lambda_min"};
    if (estimate) {
        for (const char* c : {"s_hat_t", "n_hat_t", "abs_err", "rel_err"}) columns.emplace_back(c);
    }
    io::Table activity(columns);
    Index re_holding_steps = 0;
    for (Index t = 0; t < e.timesteps(); ++t) {
        const auto k = static_cast<std::size_t>(t);
        const Graph active = induced_graph(g.graph, active_subgraph(g.graph, e.values(), t));
        const auto verdict = re_check(active, o.spectral_cap);
        if (verdict.holds) ++re_holding_steps;
        std::vector<std::string> row{fmt(t),
                                     fmt(stats.active_edges[k]),
                                     fmt(stats.active_nodes[k]),
                                     fmt(stats.edge_fraction[k]),
                                     fmt(stats.node_fraction[k]),
                                     fmt(stats.mean_degree[k]),
                                     fmt(expected_active_nodes(g.graph, stats.active_edges[k])),
                                     fmt(degree_assortativity(active)),
                                     verdict.holds ? "1" : "0",
                                     fmt(verdict.lambda_min)};
        if (estimate) {
            row.push_back(fmt(estimate_stats->active_edges[k]));
            row.push_back(fmt(estimate_stats->active_nodes[k]));
            row.push_back(fmt(errors->absolute[k]));
            row.push_back(fmt(errors->relative[k]));
        }
        activity.add_row(std::move(row));
    }

    io::Table nodes({"node", "degree", "time_fraction", "null_global", "null_per_time"});
    for (Index i = 0; i < g.graph.n(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        nodes.add_row({g.graph.node_ids()[k], fmt(g.graph.degree(i)), fmt(stats.node_time_fraction[k]),
                       fmt(nulls.global[k]), fmt(nulls.per_time[k])});
    }

    const fs::path dir = o.out_dir;
    io::write_file(dir / "activity.csv", activity.to_csv());
    io::write_file(dir / "nodes.csv", nodes.to_csv());

    auto report = report_header(sub);
    report["n"] = g.graph.n();
    report["m"] = g.graph.m();
    report["T"] = e.timesteps();
    report["aspect_ratio"] = stats.aspect_ratio;
    report["mean_degree"] = g.graph.mean_degree();
    report["assortativity"] = opt(degree_assortativity(g.graph));
    report["re_static"] = verdict_json(static_verdict);
    report["re_holding_timesteps"] = re_holding_steps;
    if (errors) {
        report["frobenius_error"] = errors->frobenius;
        report["bound"] = opt(errors->bound);
        report["bound_satisfied"] = errors->bound ? ordered_json(errors->bound_satisfied) : ordered_json(nullptr);
    }
    write_report(dir, "diagnose_report.json", report);
}

// ---------------------------------------------------------------- synth

struct SynthOptions {
    std::string topology = "tree";
    Index nodes = 10;
    Index edges = 0;
    std::string parity = "odd";
    Index timesteps = 10;
    double density = 0.1;
    std::string values = "unit";
    double uniform_low = 0.5;
    double uniform_high = 1.5;
    double geometric_p = 0.5;
    std::uint64_t seed = 0;
    std::string out_dir;
};

void add_synth(CLI::App& app, SynthOptions& o) {
    auto* sub = app.add_subcommand("synth", "Generate a seeded synthetic graph and edge activity");
    sub->add_option("--topology", o.topology, "tree, cycle, unicyclic, erdos-renyi or star")
        ->capture_default_str()
        ->check(CLI::IsMember({"tree", "cycle", "unicyclic", "erdos-renyi", "star"}));
    sub->add_option("--n", o.nodes, "Node count (cycle length for 'cycle')")->capture_default_str();
    sub->add_option("--m", o.edges, "Edge count for erdos-renyi")->capture_default_str();
    sub->add_option("--parity", o.parity, "Cycle parity for unicyclic")
        ->capture_default_str()
        ->check(CLI::IsMember({"odd", "even"}));
    sub->add_option("--T", o.timesteps, "Timesteps")->capture_default_str();
    sub->add_option("--density", o.density, "Fraction of nonzero entries")->capture_default_str();
    sub->add_option("--values", o.values, "unit, uniform or geometric")
        ->capture_default_str()
        ->check(CLI::IsMember({"unit", "uniform", "geometric"}));
    sub->add_option("--uniform-low", o.uniform_low, "Lower bound for uniform values")->capture_default_str();
    sub->add_option("--uniform-high", o.uniform_high, "Upper bound for uniform values")->capture_default_str();
    sub->add_option("--geometric-p", o.geometric_p, "Success probability for geometric counts")->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed")->capture_default_str();
    sub->add_option("--out-dir", o.out_dir, "Output directory")->required();
}

void run_synth(const CLI::App& sub, const SynthOptions& o) {
    ScenarioSpec spec;
    spec.topology = parse_topology(o.topology);
    spec.nodes = o.nodes;
    spec.edges = o.edges;
    spec.odd_cycle = o.parity == "odd";
    spec.timesteps = o.timesteps;
    spec.activity_density = o.density;
    spec.value_dist = parse_value_dist(o.values);
    spec.uniform_low = o.uniform_low;
    spec.uniform_high = o.uniform_high;
    spec.geometric_p = o.geometric_p;
    spec.seed = o.seed;

    const Graph g = gen_graph(spec);
    const auto e = gen_activity(g, spec);
    const fs::path dir = o.out_dir;
    io::write_graph(dir / "graph.json", g);
    const std::string hash = io::file_sha256(dir / "graph.json");
    io::write_matrix(dir / "E.csv", e.values(), {io::MatrixKind::Edge, g.m(), spec.timesteps, e.window(), hash});

    auto report = report_header(sub);
    report["n"] = g.n();
    report["m"] = g.m();
    report["T"] = spec.timesteps;
    report["nonzeros"] = static_cast<Index>((e.values().array() > 0.0).count());
    write_report(dir, "synth_report.json", report);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"edgerec: recover temporal edge activity from node activity and a static graph"};
    app.set_version_flag("--version", std::string(EDGEREC_VERSION));
    app.set_config("--config", "", "TOML config file; command-line flags override it");
    app.require_subcommand(1);

    IngestOptions ingest;
    ProjectOptions project_opts;
    RecoverOptions recover_opts;
    EvaluateOptions evaluate;
    BackboneOptions backbone;
    DiagnoseOptions diagnose;
    SynthOptions synth;
    add_ingest(app, ingest);
    add_project(app, project_opts);
    add_recover(app, recover_opts);
    add_evaluate(app, evaluate);
    add_backbone(app, backbone);
    add_diagnose(app, diagnose);
    add_synth(app, synth);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        const CLI::App* sub = app.get_subcommands().front();
        const std::string& name = sub->get_name();
        if (name == "ingest") run_ingest(*sub, ingest);
        else if (name == "project") run_project(*sub, project_opts);
        else if (name == "recover") run_recover(*sub, recover_opts);
        else if (name == "evaluate") run_evaluate(*sub, evaluate);
        else if (name == "backbone") run_backbone(*sub, backbone);
        else if (name == "diagnose") run_diagnose(*sub, diagnose);
        else if (name == "synth") run_synth(*sub, synth);
        return kOk;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidData;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const std::exception& e) {
        err << "internal failure: " << e.what() << "\n";
        return kNumericFailure;
    }
}

} // namespace edgerec::cli
