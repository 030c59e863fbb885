#include <cmath>

#include "doctest.h"

#include "edgerec/benchgen.hpp"
#include "edgerec/errors.hpp"
#include "edgerec/random.hpp"
#include "edgerec/recover.hpp"
#include "edgerec/tasks.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace edgerec;

TEST_SUITE("tasks") {

TEST_CASE("tie strengths are row sums") {
    Matrix e(2, 2);
    e << 1, 2, 0, 3;
    CHECK(tie_strengths(e) == Vector((Vector(2) << 3, 3).finished()));
    CHECK(tie_strengths(Matrix::Zero(3, 4)).isZero());
    CHECK(tie_strengths(2.5 * e) == 2.5 * tie_strengths(e));
}

TEST_CASE("kernel baseline inner products") {
    const Graph g = fixtures::path3();
    Matrix n(3, 2);
    n << 1, 0, 1, 1, 0, 1;
    CHECK(kernel_baseline(NodeActivityMatrix(n), g) == Vector((Vector(2) << 1, 1).finished()));
    CHECK(kernel_baseline(NodeActivityMatrix(Matrix::Zero(3, 2)), g).isZero());
}

TEST_CASE("kernel baseline with one active edge") {
    // Star a-{b,c,d}; only (a,b) active at the single timestep.
    const Graph g = fixtures::from_pairs({{"a", "b"}, {"a", "c"}, {"a", "d"}});
    Matrix e = Matrix::Zero(3, 1);
    e(0, 0) = 1.0;
    const auto nodes = project(incidence(g), EdgeActivityMatrix(e));
    const Vector w = kernel_baseline(nodes, g);
    CHECK(w(0) == 1.0);
    CHECK(w(1) == 0.0);
    CHECK(w(2) == 0.0);
}

TEST_CASE("disparity filter on hand-checked configurations") {
    SUBCASE("degree two with equal weights stays out at 0.125") {
        // Path a-b-c: b has k=2, p=0.5, (1-0.5)^1 = 0.5; leaves never flag.
        const Graph g = fixtures::path3();
        const auto labels = disparity_backbone(g, Vector::Ones(2), 0.125);
        CHECK(labels == std::vector<bool>{false, false});
    }
    SUBCASE("dominant edge at a hub of degree ten") {
        const Graph g = fixtures::star(10);
        Vector w = Vector::Constant(10, 1.0 / 9.0 * 0.01);
        w(0) = 0.99;
        // (1 - 0.99)^9 = 1e-18 < 0.125
        CHECK(std::pow(1.0 - 0.99, 9) < 0.125);
        const auto labels = disparity_backbone(g, w, 0.125);
        CHECK(labels[0]);
        CHECK_FALSE(labels[1]);
    }
    SUBCASE("regular graph with equal weights below the per-degree threshold") {
        // Cycle is 2-regular: (1 - 1/2)^1 = 0.5; K5 is 4-regular: (3/4)^3 = 0.421875.
        const Graph g = gen_graph(fixtures::scenario(Topology::Cycle, 9, 0));
        const auto labels = disparity_backbone(g, Vector::Ones(g.m()), 0.01);
        CHECK(std::none_of(labels.begin(), labels.end(), [](bool b) { return b; }));
        const Graph k5 = fixtures::from_pairs({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"a", "e"}, {"b", "c"},
                                               {"b", "d"}, {"b", "e"}, {"c", "d"}, {"c", "e"}, {"d", "e"}});
        const auto k5_labels = disparity_backbone(k5, Vector::Ones(k5.m()), 0.01);
        CHECK(std::none_of(k5_labels.begin(), k5_labels.end(), [](bool b) { return b; }));
        // Just above the threshold every edge flags.
        const auto all = disparity_backbone(k5, Vector::Ones(k5.m()), 0.43);
        CHECK(std::all_of(all.begin(), all.end(), [](bool b) { return b; }));
    }
    SUBCASE("zero-strength endpoints do not flag") {
        const Graph g = fixtures::triangle();
        CHECK(disparity_backbone(g, Vector::Zero(3), 0.5) == std::vector<bool>{false, false, false});
    }
}

TEST_CASE("disparity filter argument checks") {
    const Graph g = fixtures::triangle();
    CHECK_THROWS_AS(disparity_backbone(g, Vector::Ones(3), 0.0), ValidationError);
    CHECK_THROWS_AS(disparity_backbone(g, Vector::Ones(3), 1.0), ValidationError);
    CHECK_THROWS_AS(disparity_backbone(g, Vector::Ones(2), 0.5), ValidationError);
    CHECK_THROWS_AS(disparity_backbone(g, -Vector::Ones(3), 0.5), ValidationError);
}

TEST_CASE("disparity filter is scale invariant and monotone in alpha") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 30, seed, 80);
        spec.timesteps = 20;
        spec.activity_density = 0.2;
        spec.value_dist = ValueDist::Geometric;
        const Graph g = gen_graph(spec);
        const Vector w = tie_strengths(gen_activity(g, spec).values());
        const auto grid = default_alpha_grid();
        std::vector<bool> previous(static_cast<std::size_t>(g.m()), false);
        for (double alpha : grid) {
            const auto labels = disparity_backbone(g, w, alpha);
            CHECK(labels == disparity_backbone(g, 10.0 * w, alpha));
            for (std::size_t j = 0; j < labels.size(); ++j) {
                if (previous[j]) CHECK(labels[j]);
            }
            previous = labels;
        }
    }
}

TEST_CASE("alpha grid") {
    const auto grid = default_alpha_grid();
    REQUIRE(grid.size() == 50);
    CHECK(grid.front() == doctest::Approx(1e-4));
    CHECK(grid.back() == 0.999);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
}

TEST_CASE("roc of a perfect scorer") {
    const std::vector<bool> truth{true, false, true, false, false};
    const auto curve = roc_curve(truth, [&](double alpha) {
        if (alpha < 0.01) return std::vector<bool>(5, false);
        if (alpha < 0.5) return truth;
        return std::vector<bool>(5, true);
    });
    bool through_corner = false;
    for (const auto& p : curve) through_corner |= (p.fpr == 0.0 && p.tpr == 1.0);
    CHECK(through_corner);
    CHECK(auc(curve) == 1.0);
    CHECK(curve.front().fpr == 0.0);
    CHECK(curve.front().tpr == 0.0);
    CHECK(curve.back().fpr == 1.0);
    CHECK(curve.back().tpr == 1.0);
}

TEST_CASE("roc confusion counts on a five-edge instance") {
    const std::vector<bool> truth{true, true, false, false, false};
    // Hand count: predicted {1,0,1,0,0} -> TP=1 of 2, FP=1 of 3.
    const auto rates = confusion_rates(truth, {true, false, true, false, false});
    CHECK(rates.tpr == 0.5);
    CHECK(rates.fpr == doctest::Approx(1.0 / 3.0));

    const std::vector<double> grid{0.1, 0.2};
    const auto curve = roc_curve(truth, [](double alpha) {
        return alpha < 0.15 ? std::vector<bool>{true, false, false, false, false}
                            : std::vector<bool>{true, false, true, false, false};
    }, grid);
    REQUIRE(curve.size() == 4);
    CHECK(curve[1].fpr == 0.0);
    CHECK(curve[1].tpr == 0.5);
    CHECK(curve[2].fpr == doctest::Approx(1.0 / 3.0));
    CHECK(curve[2].tpr == 0.5);
    // Trapezoids: 0 + (1/3)(0.5) + (2/3)(0.75)
    CHECK(auc(curve) == doctest::Approx(1.0 / 6.0 + 0.5));
}

TEST_CASE("roc of random labels hugs the diagonal") {
    Rng truth_rng(11);
    std::vector<bool> truth(4000);
    for (auto&& t : truth) t = truth_rng.bernoulli(0.3);
    Rng rng(12);
    const auto curve = roc_curve(truth, [&](double alpha) {
        std::vector<bool> labels(truth.size());
        for (auto&& l : labels) l = rng.bernoulli(alpha);
        return labels;
    });
    CHECK(auc(curve) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("roc rejects degenerate truth") {
    const std::vector<bool> all(4, true);
    CHECK_THROWS_WITH_AS(roc_curve(all, [](double) { return std::vector<bool>(4, true); }),
                         doctest::Contains("4 positives and 0 negatives"), ValidationError);
}

TEST_CASE("auc by trapezoids") {
    CHECK(auc({{0, 0, 0}, {1, 1, 1}}) == 0.5);
    CHECK(auc({{0, 0, 0}, {0, 1, 0}, {1, 1, 1}}) == 1.0);
    CHECK(auc({{0, 0, 0}, {0.5, 1, 0}, {1, 1, 1}}) == 0.75);
}

TEST_CASE("pearson and spearman") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    std::vector<double> reversed(a.rbegin(), a.rend());
    CHECK(pearson(a, a) == doctest::Approx(1.0));
    CHECK(spearman(a, a) == doctest::Approx(1.0));
    CHECK(pearson(a, reversed) == doctest::Approx(-1.0));

    const std::vector<double> x{1, 2, 2, 3};
    const std::vector<double> y{1, 2, 3, 3};
    CHECK(average_ranks(x) == std::vector<double>{1, 2.5, 2.5, 4});
    CHECK(average_ranks(y) == std::vector<double>{1, 2, 3.5, 3.5});
    const double expected = oracle::correlation({1, 2.5, 2.5, 4}, {1, 2, 3.5, 3.5});
    CHECK(spearman(x, y) == doctest::Approx(expected).epsilon(1e-15));
    // Hand ranks centred: sum of products 3.75, both sums of squares 4.5.
    CHECK(expected == doctest::Approx(3.75 / 4.5));
}

TEST_CASE("correlation errors are distinguishable") {
    const std::vector<double> flat_values{2, 2, 2};
    const std::vector<double> other{1, 2, 3};
    CHECK_THROWS_AS(pearson(flat_values, other), UndefinedError);
    CHECK_THROWS_AS(spearman(other, flat_values), UndefinedError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}), ValidationError);
    CHECK_THROWS_AS(pearson(other, std::vector<double>{1, 2}), ValidationError);
}

TEST_CASE("tree recovery correlates perfectly") {
    ScenarioSpec spec = fixtures::scenario(Topology::Tree, 25, 3);
    spec.timesteps = 12;
    spec.activity_density = 0.4;
    spec.value_dist = ValueDist::Geometric;
    const Graph g = gen_graph(spec);
    const auto e = gen_activity(g, spec);
    const auto result = least_norm(incidence(g), project(incidence(g), e));
    CHECK(pearson(flat(e.values()), flat(result.estimate)) >= 1.0 - 1e-9);
}

}
