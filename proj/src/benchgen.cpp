#include "edgerec/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "edgerec/errors.hpp"
#include "edgerec/random.hpp"

namespace edgerec {

namespace {

// Separate streams for topology and activity so changing T or the density
// leaves the graph untouched.
constexpr std::uint64_t kActivityStream = 0x9E3779B97F4A7C15ULL;

Graph assemble(Index n, std::vector<Edge> edges) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) ids.push_back(node_label(i, n));
    for (auto& e : edges) {
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    return Graph(std::move(ids), std::move(edges));
}

// Uniform labelled tree from a random Pruefer sequence.
std::vector<Edge> random_tree(Index n, Rng& rng) {
    std::vector<Edge> edges;
    if (n < 2) return edges;
    if (n == 2) return {Edge{0, 1}};
    std::vector<Index> code(static_cast<std::size_t>(n - 2));
    for (auto& c : code) c = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<Index> degree(static_cast<std::size_t>(n), 1);
    for (Index c : code) ++degree[static_cast<std::size_t>(c)];
    std::priority_queue<Index, std::vector<Index>, std::greater<>> leaves;
    for (Index i = 0; i < n; ++i) {
        if (degree[static_cast<std::size_t>(i)] == 1) leaves.push(i);
    }
    for (Index c : code) {
        const Index leaf = leaves.top();
        leaves.pop();
        edges.push_back({leaf, c});
        if (--degree[static_cast<std::size_t>(c)] == 1) leaves.push(c);
    }
    const Index a = leaves.top();
    leaves.pop();
    edges.push_back({a, leaves.top()});
    return edges;
}

std::vector<Index> random_permutation(Index n, Rng& rng) {
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
        std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
    }
    return perm;
}

Edge pair_from_rank(std::uint64_t rank, Index n) {
    // Rank r enumerates pairs (u, v), u < v, row by row.
    Index u = 0;
    std::uint64_t row = static_cast<std::uint64_t>(n - 1);
    while (rank >= row) {
        rank -= row;
        ++u;
        --row;
    }
    return {u, u + 1 + static_cast<Index>(rank)};
}

} // namespace

void ScenarioSpec::validate() const {
    if (timesteps < 1) throw ValidationError("scenario: T must be at least 1");
    if (!(activity_density >= 0.0 && activity_density <= 1.0)) {
        throw ValidationError("scenario: activity density must lie in [0, 1]");
    }
    switch (topology) {
    case Topology::Tree:
    case Topology::Star:
        if (nodes < 1) throw ValidationError("scenario: need at least one node");
        break;
    case Topology::Cycle:
        if (nodes < 3) throw ValidationError("scenario: a cycle needs length >= 3");
        break;
    case Topology::Unicyclic:
        if (nodes < (odd_cycle ? 3 : 4)) {
            throw ValidationError(std::string("scenario: an ") + (odd_cycle ? "odd" : "even") +
                                  " unicyclic graph needs more nodes");
        }
        break;
    case Topology::ErdosRenyi:
        if (nodes < 1) throw ValidationError("scenario: need at least one node");
        if (edges < 0 || edges > nodes * (nodes - 1) / 2) {
            throw ValidationError("scenario: m = " + std::to_string(edges) + " is not realizable with n = " +
                                  std::to_string(nodes));
        }
        break;
    }
    switch (value_dist) {
    case ValueDist::Unit: break;
    case ValueDist::Uniform:
        if (!(uniform_low > 0.0 && uniform_high >= uniform_low && std::isfinite(uniform_high))) {
            throw ValidationError("scenario: uniform(a, b) needs 0 < a <= b");
        }
        break;
    case ValueDist::Geometric:
        if (!(geometric_p > 0.0 && geometric_p <= 1.0)) throw ValidationError("scenario: geometric p must lie in (0, 1]");
        break;
    }
}

Topology parse_topology(std::string_view name) {
    if (name == "tree") return Topology::Tree;
    if (name == "cycle") return Topology::Cycle;
    if (name == "unicyclic") return Topology::Unicyclic;
    if (name == "erdos-renyi") return Topology::ErdosRenyi;
    if (name == "star") return Topology::Star;
    throw ValidationError("unknown topology '" + std::string(name) + "'");
}

std::string_view to_string(Topology topology) {
    switch (topology) {
    case Topology::Tree: return "tree";
    case Topology::Cycle: return "cycle";
    case Topology::Unicyclic: return "unicyclic";
    case Topology::ErdosRenyi: return "erdos-renyi";
    case Topology::Star: return "star";
    }
    return "tree";
}

ValueDist parse_value_dist(std::string_view name) {
    if (name == "unit") return ValueDist::Unit;
    if (name == "uniform") return ValueDist::Uniform;
    if (name == "geometric") return ValueDist::Geometric;
    throw ValidationError("unknown value distribution '" + std::string(name) + "'");
}

std::string_view to_string(ValueDist dist) {
    switch (dist) {
    case ValueDist::Unit: return "unit";
    case ValueDist::Uniform: return "uniform";
    case ValueDist::Geometric: return "geometric";
    }
    return "unit";
}

Graph gen_graph(const ScenarioSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const Index n = spec.nodes;
    std::vector<Edge> edges;
    switch (spec.topology) {
    case Topology::Tree:
        edges = random_tree(n, rng);
        break;
    case Topology::Star:
        for (Index i = 1; i < n; ++i) edges.push_back({0, i});
        break;
    case Topology::Cycle:
        for (Index i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
        break;
    case Topology::Unicyclic: {
        // Cycle length drawn uniformly among lengths of the requested parity,
        // remaining nodes attached one at a time to a uniform earlier node.
        const Index first = spec.odd_cycle ? 3 : 4;
        const Index choices = (n - first) / 2 + 1;
        const Index length = first + 2 * static_cast<Index>(rng.below(static_cast<std::uint64_t>(choices)));
        const auto perm = random_permutation(n, rng);
        auto at = [&](Index i) { return perm[static_cast<std::size_t>(i)]; };
        for (Index i = 0; i < length; ++i) edges.push_back({at(i), at((i + 1) % length)});
        for (Index i = length; i < n; ++i) {
            edges.push_back({at(i), at(static_cast<Index>(rng.below(static_cast<std::uint64_t>(i))))});
        }
        break;
    }
    case Topology::ErdosRenyi: {
        // Floyd's sampling of m distinct pair ranks.
        const auto total = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
        std::set<std::uint64_t> chosen;
        for (std::uint64_t j = total - static_cast<std::uint64_t>(spec.edges); j < total; ++j) {
            const std::uint64_t r = rng.below(j + 1);
            if (!chosen.insert(r).second) chosen.insert(j);
        }
        for (std::uint64_t r : chosen) edges.push_back(pair_from_rank(r, n));
        break;
    }
    }
    return assemble(n, std::move(edges));
}

EdgeActivityMatrix gen_activity(const Graph& g, const ScenarioSpec& spec) {
    spec.validate();
    Rng rng(spec.seed ^ kActivityStream);
    Matrix values = Matrix::Zero(g.m(), spec.timesteps);
    for (Index j = 0; j < g.m(); ++j) {
        for (Index t = 0; t < spec.timesteps; ++t) {
            if (!rng.bernoulli(spec.activity_density)) continue;
            double value = 1.0;
            switch (spec.value_dist) {
            case ValueDist::Unit: break;
            case ValueDist::Uniform:
                value = spec.uniform_low + (spec.uniform_high - spec.uniform_low) * rng.uniform();
                break;
            case ValueDist::Geometric:
                while (!rng.bernoulli(spec.geometric_p)) value += 1.0;
                break;
            }
            values(j, t) = value;
        }
    }
    return EdgeActivityMatrix(std::move(values));
}

} // namespace edgerec
