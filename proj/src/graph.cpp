#include "edgerec/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "edgerec/errors.hpp"

namespace edgerec {

Graph::Graph(std::vector<std::string> node_ids, std::vector<Edge> edges)
    : node_ids_(std::move(node_ids)), edges_(std::move(edges)) {
    if (!std::is_sorted(node_ids_.begin(), node_ids_.end()) ||
        std::adjacent_find(node_ids_.begin(), node_ids_.end()) != node_ids_.end()) {
        throw ValidationError("graph: node ids must be sorted and unique");
    }
    for (const auto& id : node_ids_) {
        if (id.empty()) throw ValidationError("graph: empty node id");
    }
    if (!std::is_sorted(edges_.begin(), edges_.end()) ||
        std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw ValidationError("graph: edges must be sorted and unique");
    }
    const Index count = n();
    degrees_.assign(node_ids_.size(), 0);
    for (const auto& e : edges_) {
        if (e.u == e.v) {
            throw ValidationError("graph: self-loop on node " + std::to_string(e.u));
        }
        if (e.u < 0 || e.v >= count || e.u > e.v) {
            throw ValidationError("graph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") is out of range or not ordered u < v");
        }
        ++degrees_[static_cast<std::size_t>(e.u)];
        ++degrees_[static_cast<std::size_t>(e.v)];
    }

    // CSR layout of incident edges; filling in edge order keeps each list ascending.
    incidence_offsets_.assign(node_ids_.size() + 1, 0);
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        incidence_offsets_[i + 1] = incidence_offsets_[i] + degrees_[i];
    }
    incidence_list_.resize(2 * edges_.size());
    std::vector<Index> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
    for (std::size_t j = 0; j < edges_.size(); ++j) {
        incidence_list_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(edges_[j].u)]++)] =
            static_cast<Index>(j);
        incidence_list_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(edges_[j].v)]++)] =
            static_cast<Index>(j);
    }
}

std::span<const Index> Graph::incident_edges(Index i) const {
    const auto begin = static_cast<std::size_t>(incidence_offsets_[static_cast<std::size_t>(i)]);
    const auto end = static_cast<std::size_t>(incidence_offsets_[static_cast<std::size_t>(i) + 1]);
    return std::span<const Index>(incidence_list_).subspan(begin, end - begin);
}

Index Graph::find_node(const std::string& id) const {
    const auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), id);
    if (it == node_ids_.end() || *it != id) return -1;
    return static_cast<Index>(it - node_ids_.begin());
}

Graph build_graph(std::span<const IdPair> edge_list, std::span<const std::string> extra_nodes) {
    std::set<std::string> ids(extra_nodes.begin(), extra_nodes.end());
    for (const auto& [a, b] : edge_list) {
        if (a.empty() || b.empty()) {
            throw ValidationError("build_graph: empty node id in pair (\"" + a + "\", \"" + b + "\")");
        }
        if (a == b) {
            throw ValidationError("build_graph: self-loop (\"" + a + "\", \"" + b + "\")");
        }
        ids.insert(a);
        ids.insert(b);
    }
    if (ids.empty()) throw ValidationError("build_graph: graph needs at least one node");

    std::vector<std::string> nodes(ids.begin(), ids.end());
    std::map<std::string_view, Index> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], static_cast<Index>(i));

    std::vector<Edge> edges;
    edges.reserve(edge_list.size());
    for (const auto& [a, b] : edge_list) {
        Index u = index.at(a);
        Index v = index.at(b);
        if (u > v) std::swap(u, v);
        edges.push_back({u, v});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(std::move(nodes), std::move(edges));
}

IncidenceMatrix::IncidenceMatrix(SparseMatrix matrix) : matrix_(std::move(matrix)) {
    matrix_.makeCompressed();
    column_norm_sq_.resize(static_cast<std::size_t>(matrix_.cols()));
    for (Index j = 0; j < matrix_.cols(); ++j) {
        double sq = 0.0;
        for (SparseMatrix::InnerIterator it(matrix_, j); it; ++it) sq += it.value() * it.value();
        column_norm_sq_[static_cast<std::size_t>(j)] = sq;
    }
}

IncidenceMatrix incidence(const Graph& g) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(2 * static_cast<std::size_t>(g.m()));
    for (Index j = 0; j < g.m(); ++j) {
        triplets.emplace_back(g.edge(j).u, j, 1.0);
        triplets.emplace_back(g.edge(j).v, j, 1.0);
    }
    SparseMatrix b(g.n(), g.m());
    b.setFromTriplets(triplets.begin(), triplets.end());
    return IncidenceMatrix(std::move(b));
}

std::string node_label(Index i, Index count) {
    const std::size_t width = std::to_string(std::max<Index>(count - 1, 0)).size();
    std::string digits = std::to_string(i);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return digits;
}

Graph line_graph(const Graph& g) {
    if (g.m() == 0) return Graph{};
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(g.m()));
    for (Index j = 0; j < g.m(); ++j) ids.push_back(node_label(j, g.m()));

    std::vector<Edge> edges;
    for (Index i = 0; i < g.n(); ++i) {
        const auto inc = g.incident_edges(i);
        for (std::size_t a = 0; a < inc.size(); ++a) {
            for (std::size_t b = a + 1; b < inc.size(); ++b) edges.push_back({inc[a], inc[b]});
        }
    }
    // Two simple edges share at most one endpoint, so no duplicates arise.
    std::sort(edges.begin(), edges.end());
    return Graph(std::move(ids), std::move(edges));
}

ActiveSubgraph active_subgraph(const Graph& g, const Matrix& activity, Index t, double eps) {
    if (activity.rows() != g.m()) throw ValidationError("active_subgraph: activity rows must equal m");
    if (t < 0 || t >= activity.cols()) throw ValidationError("active_subgraph: timestep out of range");
    ActiveSubgraph sub;
    sub.timestep = t;
    std::vector<char> node_on(static_cast<std::size_t>(g.n()), 0);
    for (Index j = 0; j < g.m(); ++j) {
        if (activity(j, t) > eps) {
            sub.edge_subset.push_back(j);
            node_on[static_cast<std::size_t>(g.edge(j).u)] = 1;
            node_on[static_cast<std::size_t>(g.edge(j).v)] = 1;
        }
    }
    for (Index i = 0; i < g.n(); ++i) {
        if (node_on[static_cast<std::size_t>(i)]) sub.node_subset.push_back(i);
    }
    return sub;
}

Graph induced_graph(const Graph& g, const ActiveSubgraph& sub) {
    if (sub.node_subset.empty()) return Graph{};
    std::vector<Index> remap(static_cast<std::size_t>(g.n()), -1);
    std::vector<std::string> ids;
    ids.reserve(sub.node_subset.size());
    for (std::size_t k = 0; k < sub.node_subset.size(); ++k) {
        remap[static_cast<std::size_t>(sub.node_subset[k])] = static_cast<Index>(k);
        ids.push_back(g.node_ids()[static_cast<std::size_t>(sub.node_subset[k])]);
    }
    std::vector<Edge> edges;
    edges.reserve(sub.edge_subset.size());
    for (Index j : sub.edge_subset) {
        edges.push_back({remap[static_cast<std::size_t>(g.edge(j).u)], remap[static_cast<std::size_t>(g.edge(j).v)]});
    }
    return Graph(std::move(ids), std::move(edges));
}

std::vector<std::vector<Index>> connected_components(const Graph& g) {
    std::vector<Index> label(static_cast<std::size_t>(g.n()), -1);
    std::vector<std::vector<Index>> components;
    std::vector<Index> stack;
    for (Index root = 0; root < g.n(); ++root) {
        if (label[static_cast<std::size_t>(root)] >= 0) continue;
        const auto id = static_cast<Index>(components.size());
        components.emplace_back();
        label[static_cast<std::size_t>(root)] = id;
        stack.push_back(root);
        while (!stack.empty()) {
            const Index i = stack.back();
            stack.pop_back();
            components.back().push_back(i);
            for (Index j : g.incident_edges(i)) {
                const Index other = g.edge(j).u == i ? g.edge(j).v : g.edge(j).u;
                if (label[static_cast<std::size_t>(other)] < 0) {
                    label[static_cast<std::size_t>(other)] = id;
                    stack.push_back(other);
                }
            }
        }
        std::sort(components.back().begin(), components.back().end());
    }
    return components;
}

} // namespace edgerec
