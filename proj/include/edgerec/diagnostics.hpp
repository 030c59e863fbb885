#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "edgerec/graph.hpp"
#include "edgerec/types.hpp"

namespace edgerec {

struct ErrorSeries {
    std::vector<double> absolute;                ///< ||Ehat_t - E_t||_2
    std::vector<std::optional<double>> relative; ///< unset where ||E_t||_2 = 0
    double frobenius = 0.0;
    double truth_norm = 0.0;
    /// sqrt(m - n) * ||E||_F, present only when m >= n.
    std::optional<double> bound;
    bool bound_satisfied = true;
};

/// Per-timestep and global errors of an estimate against the truth.
/// Pass the graph dimensions to evaluate the least-norm error bound.
ErrorSeries error_series(const Matrix& truth, const Matrix& estimate, Index nodes = -1);

struct ActivityStats {
    std::vector<Index> active_edges; ///< s_t
    std::vector<Index> active_nodes; ///< n_t
    std::vector<double> edge_fraction;
    std::vector<double> node_fraction;
    std::vector<double> node_time_fraction; ///< per node, fraction of timesteps active
    std::vector<double> edge_time_fraction; ///< per edge
    std::vector<std::optional<double>> mean_degree; ///< 2 s_t / n_t, unset when n_t = 0
    double aspect_ratio = 0.0; ///< m / n
};

/// Activity counts from the pattern of entries strictly above `eps`.
ActivityStats activity_stats(const Graph& g, const Matrix& activity, double eps = 0.0);

/// Expected number of distinct endpoints when s distinct edges are drawn
/// uniformly without replacement:
///   sum_i 1 - C(m - k_i, s) / C(m, s).
/// Throws ValidationError unless 0 <= s <= m.
double expected_active_nodes(const Graph& g, Index s);

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

MonteCarloEstimate expected_active_nodes_mc(const Graph& g, Index s, int draws = 10000, std::uint64_t seed = 0);

struct NodeNulls {
    std::vector<double> global;    ///< preserves the overall number of active entries
    std::vector<double> per_time;  ///< preserves s_t at every timestep
};

NodeNulls node_activation_nulls(const Graph& g, const Matrix& activity, double eps = 0.0);

/// Degree-mixing coefficient over both orientations of every edge; unset
/// when fewer than two edges or zero variance.
std::optional<double> degree_assortativity(const Graph& g);

enum class ComponentKind { Tree, OddUnicyclic, Other };

std::string_view to_string(ComponentKind kind);

struct ReVerdict {
    std::vector<ComponentKind> components; ///< ordered as connected_components()
    bool holds = false;
    /// Smallest eigenvalue of B^T B; unset when m = 0 or m exceeds the cap.
    std::optional<double> lambda_min;
    /// Combinatorial and spectral verdicts agree (true when spectral skipped).
    bool consistent = true;
};

/// Full-column-rank check of the incidence matrix: every component must be a
/// tree or contain exactly one cycle, of odd length. Cross-checked against
/// lambda_min(B^T B) > 1e-9 when m <= spectral_cap.
ReVerdict re_check(const Graph& g, Index spectral_cap = 2000);

/// lambda_min(B^T B) computed densely.
double min_gram_eigenvalue(const Graph& g);

} // namespace edgerec
