#pragma once

#include <string>
#include <vector>

#include "edgerec/benchgen.hpp"
#include "edgerec/graph.hpp"

namespace edgerec::fixtures {

inline Graph from_pairs(std::vector<IdPair> pairs) { return build_graph(pairs); }

inline Graph path3() { return from_pairs({{"a", "b"}, {"b", "c"}}); }
inline Graph triangle() { return from_pairs({{"a", "b"}, {"b", "c"}, {"a", "c"}}); }

/// a-b-c-d-a. Canonical edges: (a,b)=0, (a,d)=1, (b,c)=2, (c,d)=3.
inline Graph square() { return from_pairs({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}); }

inline Graph star(int leaves) {
    std::vector<IdPair> pairs;
    for (int i = 0; i < leaves; ++i) pairs.emplace_back("hub", "leaf" + std::to_string(i));
    return from_pairs(pairs);
}

inline ScenarioSpec scenario(Topology topology, Index nodes, std::uint64_t seed, Index edges = 0) {
    ScenarioSpec spec;
    spec.topology = topology;
    spec.nodes = nodes;
    spec.edges = edges;
    spec.seed = seed;
    return spec;
}

} // namespace edgerec::fixtures
