#include "edgerec/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "edgerec/errors.hpp"
#include "edgerec/random.hpp"

namespace edgerec {

namespace {

double log_choose(double a, double b) { return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0); }

// P(node of degree k is hit) when s of m edges are drawn without replacement.
double hit_probability(Index m, Index k, Index s) {
    if (s <= 0 || k <= 0) return 0.0;
    if (m - k < s) return 1.0;
    const double miss = std::exp(log_choose(static_cast<double>(m - k), static_cast<double>(s)) -
                                 log_choose(static_cast<double>(m), static_cast<double>(s)));
    return 1.0 - miss;
}

} // namespace

ErrorSeries error_series(const Matrix& truth, const Matrix& estimate, Index nodes) {
    if (truth.rows() != estimate.rows() || truth.cols() != estimate.cols()) {
        throw ValidationError("error_series: truth and estimate differ in shape");
    }
    ErrorSeries out;
    const Matrix diff = estimate - truth;
    double total_sq = 0.0;
    for (Index t = 0; t < truth.cols(); ++t) {
        const double abs_err = diff.col(t).norm();
        const double scale = truth.col(t).norm();
        out.absolute.push_back(abs_err);
        out.relative.push_back(scale > 0.0 ? std::optional<double>(abs_err / scale) : std::nullopt);
        total_sq += abs_err * abs_err;
    }
    out.frobenius = std::sqrt(total_sq);
    out.truth_norm = truth.norm();
    const Index m = truth.rows();
    if (nodes >= 0 && m >= nodes) {
        const double bound = std::sqrt(static_cast<double>(m - nodes)) * out.truth_norm;
        out.bound = bound;
        out.bound_satisfied = out.frobenius <= bound + 1e-12 * out.truth_norm;
    }
    return out;
}

ActivityStats activity_stats(const Graph& g, const Matrix& activity, double eps) {
    if (activity.rows() != g.m()) throw ValidationError("activity_stats: activity rows must equal m");
    const Index steps = activity.cols();
    ActivityStats stats;
    stats.aspect_ratio = static_cast<double>(g.m()) / static_cast<double>(std::max<Index>(g.n(), 1));
    std::vector<Index> node_hits(static_cast<std::size_t>(g.n()), 0);
    std::vector<Index> edge_hits(static_cast<std::size_t>(g.m()), 0);
    std::vector<Index> stamp(static_cast<std::size_t>(g.n()), -1);
    for (Index t = 0; t < steps; ++t) {
        Index s = 0;
        Index active = 0;
        for (Index j = 0; j < g.m(); ++j) {
            if (!(activity(j, t) > eps)) continue;
            ++s;
            ++edge_hits[static_cast<std::size_t>(j)];
            for (Index node : {g.edge(j).u, g.edge(j).v}) {
                auto& mark = stamp[static_cast<std::size_t>(node)];
                if (mark != t) {
                    mark = t;
                    ++active;
                    ++node_hits[static_cast<std::size_t>(node)];
                }
            }
        }
        stats.active_edges.push_back(s);
        stats.active_nodes.push_back(active);
        stats.edge_fraction.push_back(g.m() > 0 ? static_cast<double>(s) / static_cast<double>(g.m()) : 0.0);
        stats.node_fraction.push_back(static_cast<double>(active) / static_cast<double>(std::max<Index>(g.n(), 1)));
        stats.mean_degree.push_back(active > 0 ? std::optional<double>(2.0 * static_cast<double>(s) / static_cast<double>(active))
                                               : std::nullopt);
    }
    const double denom = steps > 0 ? static_cast<double>(steps) : 1.0;
    for (Index h : node_hits) stats.node_time_fraction.push_back(static_cast<double>(h) / denom);
    for (Index h : edge_hits) stats.edge_time_fraction.push_back(static_cast<double>(h) / denom);
    return stats;
}

double expected_active_nodes(const Graph& g, Index s) {
    const Index m = g.m();
    if (s < 0 || s > m) throw ValidationError("expected_active_nodes: s must lie in [0, m]");
    if (s == 0) return 0.0;
    if (s == 1) {
        // Each node is hit with probability k_i / m; the degrees sum to 2m.
        const Index degree_sum = std::accumulate(g.degrees().begin(), g.degrees().end(), Index{0});
        return static_cast<double>(degree_sum) / static_cast<double>(m);
    }
    double expected = 0.0;
    for (Index k : g.degrees()) expected += hit_probability(m, k, s);
    return expected;
}

MonteCarloEstimate expected_active_nodes_mc(const Graph& g, Index s, int draws, std::uint64_t seed) {
    const Index m = g.m();
    if (s < 0 || s > m) throw ValidationError("expected_active_nodes_mc: s must lie in [0, m]");
    if (draws < 2) throw ValidationError("expected_active_nodes_mc: need at least two draws");
    Rng rng(seed);
    std::vector<Index> pool(static_cast<std::size_t>(m));
    std::vector<int> stamp(static_cast<std::size_t>(g.n()), -1);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int d = 0; d < draws; ++d) {
        std::iota(pool.begin(), pool.end(), Index{0});
        Index active = 0;
        for (Index k = 0; k < s; ++k) {
            const auto pick = static_cast<std::size_t>(k) + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(m - k)));
            std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
            const Edge& e = g.edge(pool[static_cast<std::size_t>(k)]);
            for (Index node : {e.u, e.v}) {
                if (stamp[static_cast<std::size_t>(node)] != d) {
                    stamp[static_cast<std::size_t>(node)] = d;
                    ++active;
                }
            }
        }
        sum += static_cast<double>(active);
        sum_sq += static_cast<double>(active) * static_cast<double>(active);
    }
    const double mean = sum / draws;
    const double variance = std::max(0.0, (sum_sq - draws * mean * mean) / (draws - 1));
    return {mean, std::sqrt(variance / draws)};
}

NodeNulls node_activation_nulls(const Graph& g, const Matrix& activity, double eps) {
    if (activity.rows() != g.m()) throw ValidationError("node_activation_nulls: activity rows must equal m");
    const Index m = g.m();
    const Index steps = activity.cols();
    NodeNulls nulls;
    nulls.global.assign(static_cast<std::size_t>(g.n()), 0.0);
    nulls.per_time.assign(static_cast<std::size_t>(g.n()), 0.0);
    if (m == 0 || steps == 0) return nulls;

    std::vector<Index> per_step(static_cast<std::size_t>(steps));
    Index nonzeros = 0;
    for (Index t = 0; t < steps; ++t) {
        per_step[static_cast<std::size_t>(t)] = static_cast<Index>((activity.col(t).array() > eps).count());
        nonzeros += per_step[static_cast<std::size_t>(t)];
    }
    const double p = static_cast<double>(nonzeros) / static_cast<double>(m * steps);
    for (Index i = 0; i < g.n(); ++i) {
        const Index k = g.degree(i);
        nulls.global[static_cast<std::size_t>(i)] = 1.0 - std::pow(1.0 - p, static_cast<double>(k));
        double acc = 0.0;
        for (Index s : per_step) acc += hit_probability(m, k, s);
        nulls.per_time[static_cast<std::size_t>(i)] = acc / static_cast<double>(steps);
    }
    return nulls;
}

std::optional<double> degree_assortativity(const Graph& g) {
    if (g.m() < 2) return std::nullopt;
    // Both orientations: the two marginals coincide.
    double sum = 0.0, sum_sq = 0.0, cross = 0.0;
    for (const Edge& e : g.edges()) {
        const auto ku = static_cast<double>(g.degree(e.u));
        const auto kv = static_cast<double>(g.degree(e.v));
        sum += ku + kv;
        sum_sq += ku * ku + kv * kv;
        cross += 2.0 * ku * kv;
    }
    const double count = 2.0 * static_cast<double>(g.m());
    const double mean = sum / count;
    const double variance = sum_sq / count - mean * mean;
    if (variance <= 1e-12 * std::max(1.0, mean * mean)) return std::nullopt;
    return (cross / count - mean * mean) / variance;
}

std::string_view to_string(ComponentKind kind) {
    switch (kind) {
    case ComponentKind::Tree: return "tree";
    case ComponentKind::OddUnicyclic: return "odd-unicyclic";
    case ComponentKind::Other: return "other";
    }
    return "other";
}

double min_gram_eigenvalue(const Graph& g) {
    if (g.m() == 0) throw ValidationError("min_gram_eigenvalue: graph has no edges");
    const Matrix b = incidence(g).dense();
    const Matrix gram = b.transpose() * b;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("min_gram_eigenvalue: eigensolver failed");
    return solver.eigenvalues()(0);
}

ReVerdict re_check(const Graph& g, Index spectral_cap) {
    ReVerdict verdict;
    verdict.holds = true;
    std::vector<Index> residual_degree(g.degrees());
    std::vector<char> removed(static_cast<std::size_t>(g.n()), 0);
    for (const auto& component : connected_components(g)) {
        Index degree_sum = 0;
        for (Index i : component) degree_sum += g.degree(i);
        const Index nodes = static_cast<Index>(component.size());
        const Index edges = degree_sum / 2;

        ComponentKind kind = ComponentKind::Other;
        if (edges == nodes - 1) {
            kind = ComponentKind::Tree;
        } else if (edges == nodes) {
            // Peel leaves; what survives is the unique cycle.
            std::vector<Index> leaves;
            for (Index i : component) {
                if (residual_degree[static_cast<std::size_t>(i)] == 1) leaves.push_back(i);
            }
            Index remaining = nodes;
            while (!leaves.empty()) {
                const Index leaf = leaves.back();
                leaves.pop_back();
                removed[static_cast<std::size_t>(leaf)] = 1;
                --remaining;
                for (Index j : g.incident_edges(leaf)) {
                    const Index other = g.edge(j).u == leaf ? g.edge(j).v : g.edge(j).u;
                    if (removed[static_cast<std::size_t>(other)]) continue;
                    if (--residual_degree[static_cast<std::size_t>(other)] == 1) leaves.push_back(other);
                }
            }
            // Walk the cycle to confirm it is a single ring of `remaining` nodes.
            Index start = -1;
            for (Index i : component) {
                if (!removed[static_cast<std::size_t>(i)]) {
                    start = i;
                    break;
                }
            }
            Index length = 0;
            Index previous = -1;
            Index current = start;
            do {
                ++length;
                Index next = -1;
                for (Index j : g.incident_edges(current)) {
                    const Index other = g.edge(j).u == current ? g.edge(j).v : g.edge(j).u;
                    if (!removed[static_cast<std::size_t>(other)] && other != previous) {
                        next = other;
                        break;
                    }
                }
                previous = current;
                current = next;
            } while (current != start && current >= 0 && length <= remaining);
            if (length == remaining && length % 2 == 1) kind = ComponentKind::OddUnicyclic;
        }
        verdict.components.push_back(kind);
        if (kind == ComponentKind::Other) verdict.holds = false;
    }

    if (g.m() > 0 && g.m() <= spectral_cap) {
        verdict.lambda_min = min_gram_eigenvalue(g);
        verdict.consistent = verdict.holds == (*verdict.lambda_min > 1e-9);
    }
    return verdict;
}

} // namespace edgerec
