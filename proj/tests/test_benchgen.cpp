#include <cmath>

#include "doctest.h"

#include "edgerec/benchgen.hpp"
#include "edgerec/diagnostics.hpp"
#include "edgerec/errors.hpp"
#include "edgerec/io.hpp"
#include "edgerec/random.hpp"
#include "fixtures.hpp"

using namespace edgerec;

TEST_SUITE("benchgen") {

TEST_CASE("generator reproduces the published mt19937_64 sequence") {
    Rng rng(5489u);
    std::uint64_t value = 0;
    for (int k = 0; k < 10000; ++k) value = rng.next();
    CHECK(value == 9981545732273789042ULL);

    Rng a(42);
    std::mt19937_64 raw(42);
    CHECK(a.uniform() == static_cast<double>(raw() >> 11) * 0x1.0p-53);
}

TEST_CASE("bounded draws stay in range and cover it") {
    Rng rng(3);
    std::vector<int> seen(7, 0);
    for (int k = 0; k < 7000; ++k) ++seen[rng.below(7)];
    for (int c : seen) CHECK(c > 800);
}

TEST_CASE("topologies") {
    SUBCASE("tree") {
        const Graph g = gen_graph(fixtures::scenario(Topology::Tree, 10, 1));
        CHECK(g.n() == 10);
        CHECK(g.m() == 9);
        CHECK(connected_components(g).size() == 1);
    }
    SUBCASE("odd unicyclic") {
        const Graph g = gen_graph(fixtures::scenario(Topology::Unicyclic, 7, 1));
        CHECK(g.m() == 7);
        CHECK(connected_components(g).size() == 1);
        CHECK(re_check(g).holds);
    }
    SUBCASE("even unicyclic") {
        ScenarioSpec spec = fixtures::scenario(Topology::Unicyclic, 9, 1);
        spec.odd_cycle = false;
        const Graph g = gen_graph(spec);
        CHECK(g.m() == 9);
        CHECK_FALSE(re_check(g).holds);
    }
    SUBCASE("cycle of four") {
        const Graph g = gen_graph(fixtures::scenario(Topology::Cycle, 4, 1));
        CHECK(g.m() == 4);
        CHECK_FALSE(re_check(g).holds);
    }
    SUBCASE("star") {
        const Graph g = gen_graph(fixtures::scenario(Topology::Star, 6, 1));
        CHECK(g.m() == 5);
        CHECK(g.degree(0) == 5);
    }
    SUBCASE("erdos-renyi draws distinct edges") {
        const Graph g = gen_graph(fixtures::scenario(Topology::ErdosRenyi, 50, 1, 100));
        CHECK(g.n() == 50);
        CHECK(g.m() == 100);
        const Graph complete = gen_graph(fixtures::scenario(Topology::ErdosRenyi, 6, 1, 15));
        CHECK(complete.m() == 15);
    }
}

TEST_CASE("unrealizable specs are rejected") {
    CHECK_THROWS_AS(gen_graph(fixtures::scenario(Topology::ErdosRenyi, 5, 0, 11)), ValidationError);
    CHECK_THROWS_AS(gen_graph(fixtures::scenario(Topology::Cycle, 2, 0)), ValidationError);
    ScenarioSpec spec = fixtures::scenario(Topology::Unicyclic, 3, 0);
    spec.odd_cycle = false;
    CHECK_THROWS_AS(gen_graph(spec), ValidationError);
    spec = fixtures::scenario(Topology::Tree, 5, 0);
    spec.activity_density = 1.5;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("activity density extremes") {
    ScenarioSpec spec = fixtures::scenario(Topology::Tree, 8, 2);
    spec.timesteps = 6;
    const Graph g = gen_graph(spec);
    spec.activity_density = 0.0;
    CHECK(gen_activity(g, spec).values().isZero(0.0));
    spec.activity_density = 1.0;
    CHECK(gen_activity(g, spec).values() == Matrix::Ones(g.m(), 6));
}

TEST_CASE("realized density follows the binomial law") {
    ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 50, 17, 100);
    spec.timesteps = 200;
    spec.activity_density = 0.05;
    const Graph g = gen_graph(spec);
    const auto e = gen_activity(g, spec);
    const double nnz = static_cast<double>((e.values().array() > 0).count());
    const double sd = std::sqrt(100.0 * 200.0 * 0.05 * 0.95);
    CHECK(std::abs(nnz - 1000.0) <= 3.0 * sd);
}

TEST_CASE("value distributions") {
    ScenarioSpec spec = fixtures::scenario(Topology::Tree, 20, 5);
    spec.timesteps = 50;
    spec.activity_density = 0.5;
    const Graph g = gen_graph(spec);

    spec.value_dist = ValueDist::Uniform;
    spec.uniform_low = 2.0;
    spec.uniform_high = 3.0;
    const Matrix u = gen_activity(g, spec).values();
    for (Index k = 0; k < u.size(); ++k) {
        if (u.data()[k] != 0.0) CHECK((u.data()[k] >= 2.0 && u.data()[k] < 3.0));
    }

    spec.value_dist = ValueDist::Geometric;
    spec.geometric_p = 0.5;
    const Matrix c = gen_activity(g, spec).values();
    double sum = 0.0, count = 0.0;
    for (Index k = 0; k < c.size(); ++k) {
        if (c.data()[k] == 0.0) continue;
        CHECK(c.data()[k] == std::floor(c.data()[k]));
        sum += c.data()[k];
        count += 1.0;
    }
    // Mean 1/p = 2 with variance (1-p)/p^2 = 2.
    CHECK(std::abs(sum / count - 2.0) <= 3.0 * std::sqrt(2.0 / count));
}

TEST_CASE("same seed gives identical output, other seeds differ") {
    ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 30, 123, 60);
    spec.timesteps = 20;
    spec.activity_density = 0.2;
    spec.value_dist = ValueDist::Geometric;
    const Graph a = gen_graph(spec);
    const Graph b = gen_graph(spec);
    CHECK(io::graph_to_json(a) == io::graph_to_json(b));
    CHECK(io::matrix_to_csv(gen_activity(a, spec).values()) == io::matrix_to_csv(gen_activity(b, spec).values()));
    spec.seed = 124;
    CHECK(io::graph_to_json(gen_graph(spec)) != io::graph_to_json(a));
}

TEST_CASE("generated activity satisfies the matrix invariants") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScenarioSpec spec = fixtures::scenario(Topology::Unicyclic, 15, seed);
        spec.timesteps = 10;
        spec.activity_density = 0.3;
        spec.value_dist = ValueDist::Uniform;
        spec.uniform_low = 0.1;
        spec.uniform_high = 5.0;
        const Graph g = gen_graph(spec);
        const auto e = gen_activity(g, spec);
        CHECK(e.edges() == g.m());
        CHECK((e.values().array() >= 0.0).all());
    }
}

}
