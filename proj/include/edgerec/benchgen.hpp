#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "edgerec/activity.hpp"
#include "edgerec/graph.hpp"

namespace edgerec {

enum class Topology { Tree, Cycle, Unicyclic, ErdosRenyi, Star };
enum class ValueDist { Unit, Uniform, Geometric };

struct ScenarioSpec {
    Topology topology = Topology::Tree;
    Index nodes = 10;          ///< n; for Cycle this is the cycle length
    Index edges = 0;           ///< m, Erdos-Renyi only
    bool odd_cycle = true;     ///< Unicyclic parity
    Index timesteps = 10;
    double activity_density = 0.1;
    ValueDist value_dist = ValueDist::Unit;
    double uniform_low = 0.5;  ///< Uniform(low, high), 0 < low <= high
    double uniform_high = 1.5;
    double geometric_p = 0.5;  ///< counts 1, 2, ... with P(k) = p (1-p)^(k-1)
    std::uint64_t seed = 0;

    /// Throws ValidationError when the spec cannot be realized.
    void validate() const;
};

Topology parse_topology(std::string_view name);
std::string_view to_string(Topology topology);
ValueDist parse_value_dist(std::string_view name);
std::string_view to_string(ValueDist dist);

Graph gen_graph(const ScenarioSpec& spec);
EdgeActivityMatrix gen_activity(const Graph& g, const ScenarioSpec& spec);

} // namespace edgerec
