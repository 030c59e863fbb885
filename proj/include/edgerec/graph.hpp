#pragma once

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "edgerec/types.hpp"

namespace edgerec {

/// Undirected edge between node indices, always stored with u < v.
struct Edge {
    Index u = 0;
    Index v = 0;

    auto operator<=>(const Edge&) const = default;
};

using IdPair = std::pair<std::string, std::string>;

/// Simple undirected graph in canonical order.
///
/// Nodes are sorted lexicographically by id and edges lexicographically by
/// their (u, v) index pair, so any permutation of the same input produces an
/// identical object. Immutable after construction.
class Graph {
  public:
    Graph() = default;

    /// Builds from already-indexed data. Throws ValidationError unless the
    /// node ids are sorted and unique and the edges are sorted, unique,
    /// in range and free of self-loops.
    Graph(std::vector<std::string> node_ids, std::vector<Edge> edges);

    Index n() const { return static_cast<Index>(node_ids_.size()); }
    Index m() const { return static_cast<Index>(edges_.size()); }

    const std::vector<std::string>& node_ids() const { return node_ids_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(Index j) const { return edges_[static_cast<std::size_t>(j)]; }

    Index degree(Index i) const { return degrees_[static_cast<std::size_t>(i)]; }
    const std::vector<Index>& degrees() const { return degrees_; }

    /// Edge indices incident to node i, ascending.
    std::span<const Index> incident_edges(Index i) const;

    /// Index of node id, or -1 when absent.
    Index find_node(const std::string& id) const;

    /// Mean degree 2m/n.
    double mean_degree() const { return n() == 0 ? 0.0 : 2.0 * static_cast<double>(m()) / static_cast<double>(n()); }

    bool operator==(const Graph& other) const {
        return node_ids_ == other.node_ids_ && edges_ == other.edges_;
    }

  private:
    std::vector<std::string> node_ids_;
    std::vector<Edge> edges_;
    std::vector<Index> degrees_;
    std::vector<Index> incidence_offsets_;
    std::vector<Index> incidence_list_;
};

/// Canonical graph from an unordered edge list of id pairs. Duplicates and
/// reversed pairs are merged; `extra_nodes` adds isolated nodes.
/// Throws ValidationError on self-loops (naming the pair), empty ids or an
/// empty node set.
Graph build_graph(std::span<const IdPair> edge_list, std::span<const std::string> extra_nodes = {});

/// Zero-padded decimal label, e.g. node_label(7, 120) == "007", so that
/// lexicographic order of labels matches numeric order.
std::string node_label(Index i, Index count);

/// Unoriented n x m incidence matrix, stored sparsely with exactly 2m ones.
class IncidenceMatrix {
  public:
    explicit IncidenceMatrix(SparseMatrix matrix);

    Index rows() const { return matrix_.rows(); }
    Index cols() const { return matrix_.cols(); }

    const SparseMatrix& sparse() const { return matrix_; }
    Matrix dense() const { return Matrix(matrix_); }

    /// Squared Euclidean norm of column j.
    double column_norm_sq(Index j) const { return column_norm_sq_[static_cast<std::size_t>(j)]; }

  private:
    SparseMatrix matrix_;
    std::vector<double> column_norm_sq_;
};

IncidenceMatrix incidence(const Graph& g);

/// Line graph: node j stands for edge j of g (ids are zero-padded edge
/// indices, so the canonical order is preserved). Empty graph when m = 0.
Graph line_graph(const Graph& g);

/// Nodes and edges carrying activity at one timestep.
struct ActiveSubgraph {
    Index timestep = 0;
    std::vector<Index> node_subset;
    std::vector<Index> edge_subset;
};

/// Edges with E(j, t) > eps and their endpoints. `activity` is m x T.
ActiveSubgraph active_subgraph(const Graph& g, const Matrix& activity, Index t, double eps = 0.0);

/// Materializes an active subgraph as a standalone Graph that keeps the
/// original node ids.
Graph induced_graph(const Graph& g, const ActiveSubgraph& sub);

/// Connected components as lists of node indices (each ascending), ordered
/// by smallest member.
std::vector<std::vector<Index>> connected_components(const Graph& g);

} // namespace edgerec
