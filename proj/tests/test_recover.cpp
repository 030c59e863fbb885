#include <cmath>

#include "doctest.h"

#include "edgerec/benchgen.hpp"
#include "edgerec/diagnostics.hpp"
#include "edgerec/errors.hpp"
#include "edgerec/random.hpp"
#include "edgerec/recover.hpp"
#include "edgerec/tasks.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace edgerec;

namespace {

struct Instance {
    Graph graph;
    EdgeActivityMatrix truth;
    NodeActivityMatrix nodes;
};

Instance make_instance(const ScenarioSpec& spec) {
    Graph g = gen_graph(spec);
    auto e = gen_activity(g, spec);
    auto n = project(incidence(g), e);
    return {std::move(g), std::move(e), std::move(n)};
}

SolverConfig precise(double lambda) {
    SolverConfig cfg;
    cfg.lambda = lambda;
    cfg.tol = 1e-13;
    cfg.max_sweeps = 200000;
    return cfg;
}

// Square instance: true activity on edge (a,b) only.
NodeActivityMatrix square_nodes() {
    Matrix e = Matrix::Zero(4, 1);
    e(0, 0) = 2.0;
    return project(incidence(fixtures::square()), EdgeActivityMatrix(e));
}

} // namespace

TEST_SUITE("recover") {

TEST_CASE("least-norm on a tree is exact") {
    const auto b = incidence(fixtures::path3());
    Matrix n(3, 1);
    n << 1, 3, 2;
    const auto result = least_norm(b, NodeActivityMatrix(n));
    CHECK(result.estimate(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(result.estimate(1, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(result.fit_residual < 1e-12);
}

TEST_CASE("least-norm on the square matches the null-space projection") {
    const Graph g = fixtures::square();
    const auto nodes = square_nodes();
    CHECK(nodes.values().col(0) == Vector((Vector(4) << 2, 2, 0, 0).finished()));

    // Cycle order (a,b),(b,c),(c,d),(d,a) maps to canonical rows 0,2,3,1;
    // the null vector alternates +-1 along the cycle.
    Vector null_vector(4);
    null_vector << 1, -1, -1, 1;
    null_vector /= 2.0;
    Vector truth = Vector::Zero(4);
    truth(0) = 2.0;
    const Vector oracle = truth - null_vector * null_vector.dot(truth);
    // Frozen: (a,b)=1.5, (a,d)=0.5, (b,c)=0.5, (c,d)=-0.5
    CHECK(oracle.isApprox((Vector(4) << 1.5, 0.5, 0.5, -0.5).finished()));

    const auto result = least_norm(incidence(g), nodes);
    CHECK((result.estimate.col(0) - oracle).cwiseAbs().maxCoeff() < 1e-12);

    const Matrix dense = oracle::pinv_solve(oracle::dense_incidence(g), nodes.values());
    CHECK((result.estimate - dense).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("least-norm residual vanishes and matches the normal-equation oracle") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 15, seed, 40);
        spec.timesteps = 6;
        spec.activity_density = 0.3;
        spec.value_dist = ValueDist::Uniform;
        spec.uniform_low = 0.5;
        spec.uniform_high = 3.0;
        const auto inst = make_instance(spec);
        const auto result = least_norm(incidence(inst.graph), inst.nodes);
        CAPTURE(seed);
        CHECK(result.fit_residual <= 1e-8 * inst.nodes.values().norm());
        const Matrix dense = oracle::pinv_solve(oracle::dense_incidence(inst.graph), inst.nodes.values());
        CHECK((result.estimate - dense).cwiseAbs().maxCoeff() < 1e-9);
        // Minimal norm among solutions, the truth being one of them.
        CHECK(result.estimate.norm() <= inst.truth.values().norm() + 1e-12);
    }
}

TEST_CASE("least-norm rejects non-finite input") {
    Matrix n = Matrix::Zero(3, 1);
    n(1, 0) = std::nan("");
    CHECK_THROWS_AS(least_norm(incidence(fixtures::path3()), n), ValidationError);
}

TEST_CASE("sparse recovery on the square pins the nonnegative solution") {
    const auto b = incidence(fixtures::square());
    const auto nodes = square_nodes();
    const auto result = sparse_recover(b, nodes, precise(1e-4));
    Vector expected = Vector::Zero(4);
    expected(0) = 2.0;
    CHECK((result.estimate.col(0) - expected).cwiseAbs().maxCoeff() < 1e-3);

    const Matrix reference = oracle::fista(oracle::dense_incidence(fixtures::square()), nodes.values(), 1e-4);
    CHECK((result.estimate - reference).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("penalty at or above lambda_max gives the zero solution") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 8, seed, 12);
        spec.timesteps = 4;
        spec.activity_density = 0.5;
        const auto inst = make_instance(spec);
        const auto b = incidence(inst.graph);
        const double top = lambda_max(b, inst.nodes.values());

        // Oracle: zero is optimal iff ||b_e^T N||_2 <= n * lambda for every edge.
        const Matrix dense = oracle::dense_incidence(inst.graph);
        const Matrix corr = dense.transpose() * inst.nodes.values();
        double worst = 0.0;
        for (Index e = 0; e < corr.rows(); ++e) worst = std::max(worst, corr.row(e).norm());
        CHECK(worst / static_cast<double>(inst.graph.n()) == doctest::Approx(top).epsilon(1e-14));

        for (double factor : {1.0, 1.5, 10.0}) {
            const auto result = sparse_recover(b, inst.nodes, precise(top * factor));
            CHECK(result.estimate.isZero(0.0));
            CHECK(result.kkt_residual == 0.0);
        }
        const auto below = sparse_recover(b, inst.nodes, precise(top * 0.9));
        CHECK_FALSE(below.estimate.isZero(0.0));
    }
}

TEST_CASE("zero node activity yields zero for every penalty") {
    const auto b = incidence(fixtures::triangle());
    const NodeActivityMatrix zero(Matrix::Zero(3, 5));
    for (double lambda : {0.0, 1e-3, 1.0}) CHECK(sparse_recover(b, zero, precise(lambda)).estimate.isZero(0.0));
    SolverConfig automatic;
    const auto selection = select_lambda(b, zero, automatic);
    CHECK(selection.lambda == 0.0);
    CHECK(selection.best.estimate.isZero(0.0));
}

TEST_CASE("sparse recovery rejects negative node activity") {
    Matrix n = Matrix::Ones(3, 1);
    n(0, 0) = -1.0;
    // Constructing the NodeActivityMatrix is the validation point.
    CHECK_THROWS_AS(NodeActivityMatrix{n}, ValidationError);
}

TEST_CASE("kkt residual certifies optima and detects perturbations") {
    ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 10, 4, 20);
    spec.timesteps = 5;
    spec.activity_density = 0.3;
    const auto inst = make_instance(spec);
    const auto b = incidence(inst.graph);
    const double top = lambda_max(b, inst.nodes.values());

    const auto fit = sparse_recover(b, inst.nodes, precise(0.05 * top));
    CHECK(fit.converged);
    CHECK(fit.kkt_residual <= 1e-6 * (1.0 + inst.nodes.values().norm()));

    const Matrix zero = Matrix::Zero(inst.graph.m(), 5);
    CHECK(kkt_residual(b, inst.nodes.values(), zero, top) == 0.0);

    Matrix bumped = zero;
    bumped.row(0).array() += 0.1;
    CHECK(kkt_residual(b, inst.nodes.values(), bumped, top) > 0.0);
}

TEST_CASE("objective never increases across sweeps") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 20, seed, 60);
        spec.timesteps = 8;
        spec.activity_density = 0.2;
        const auto inst = make_instance(spec);
        const auto b = incidence(inst.graph);
        const double top = lambda_max(b, inst.nodes.values());
        for (double factor : {0.3, 0.01, 0.0}) {
            SolverConfig cfg = precise(top * factor);
            cfg.max_sweeps = 500;
            const auto result = sparse_recover(b, inst.nodes, cfg);
            CAPTURE(seed);
            CAPTURE(factor);
            const double initial = sparse_objective(b, inst.nodes.values(), Matrix::Zero(inst.graph.m(), 8), top * factor);
            double previous = initial;
            for (double value : result.objective) {
                CHECK(value <= previous + 1e-12 * std::max(1.0, std::abs(previous)));
                previous = value;
            }
        }
    }
}

TEST_CASE("coordinate descent matches the proximal-gradient oracle on small graphs") {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 20; ++seed) {
        Rng rng(seed);
        const Index n = 3 + static_cast<Index>(rng.below(3));
        const Index m = std::min<Index>(n * (n - 1) / 2, 2 + static_cast<Index>(rng.below(5)));
        ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, n, seed, m);
        spec.timesteps = 1 + static_cast<Index>(rng.below(3));
        spec.activity_density = 0.6;
        spec.value_dist = ValueDist::Uniform;
        spec.uniform_low = 0.2;
        spec.uniform_high = 1.0;
        const auto inst = make_instance(spec);
        const auto b = incidence(inst.graph);
        const double top = lambda_max(b, inst.nodes.values());
        if (top == 0.0) continue;
        ++checked;
        const Matrix dense = oracle::dense_incidence(inst.graph);
        for (double factor : {0.5, 0.1, 0.01}) {
            const double lambda = top * factor;
            const auto result = sparse_recover(b, inst.nodes, precise(lambda));
            const Matrix reference = oracle::fista(dense, inst.nodes.values(), lambda, 50000);
            const double ours = oracle::objective(dense, inst.nodes.values(), result.estimate, lambda);
            const double theirs = oracle::objective(dense, inst.nodes.values(), reference, lambda);
            CAPTURE(seed);
            CAPTURE(factor);
            CHECK(std::abs(ours - theirs) <= 1e-6);
            CHECK(ours <= theirs + 1e-9);
            CHECK(result.kkt_residual <= 1e-6 * (1.0 + inst.nodes.values().norm()));
        }
    }
}

TEST_CASE("both solvers recover exactly on trees and odd-unicyclic graphs") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Topology topology = seed % 2 == 0 ? Topology::Tree : Topology::Unicyclic;
        ScenarioSpec spec = fixtures::scenario(topology, 6 + static_cast<Index>(seed), seed);
        spec.timesteps = 5;
        spec.activity_density = 0.4;
        spec.value_dist = ValueDist::Geometric;
        const auto inst = make_instance(spec);
        const auto b = incidence(inst.graph);
        CAPTURE(seed);
        REQUIRE(re_check(inst.graph).holds);

        const auto ln = least_norm(b, inst.nodes);
        CHECK((ln.estimate - inst.truth.values()).cwiseAbs().maxCoeff() <= 1e-6);
        const auto sp = sparse_recover(b, inst.nodes, precise(0.0));
        CHECK((sp.estimate - inst.truth.values()).cwiseAbs().maxCoeff() <= 1e-6);

        // A positive penalty moves the minimizer by at most n lambda sqrt(m) / lambda_min(B^T B).
        const double lambda = 1e-8;
        const auto biased = sparse_recover(b, inst.nodes, precise(lambda));
        const double bias_bound = static_cast<double>(inst.graph.n()) * lambda *
                                  std::sqrt(static_cast<double>(inst.graph.m())) / min_gram_eigenvalue(inst.graph);
        CHECK((biased.estimate - inst.truth.values()).norm() <= bias_bound);
    }
}

TEST_CASE("least-norm has no larger norm than sparse solutions that fit exactly") {
    ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 12, 21, 30);
    spec.timesteps = 10;
    spec.activity_density = 0.15;
    const auto inst = make_instance(spec);
    const auto b = incidence(inst.graph);
    const auto ln = least_norm(b, inst.nodes);
    const auto sp = sparse_recover(b, inst.nodes, precise(0.0));
    REQUIRE(sp.fit_residual < 1e-6);
    CHECK(ln.estimate.norm() <= sp.estimate.norm() + 1e-9);
    CHECK(ln.estimate.norm() <= inst.truth.values().norm() + 1e-12);
}

TEST_CASE("a silent edge is zeroed by the group penalty but not by least-norm") {
    // The square a-b-c-d carries the only null-space direction of B, so the
    // silent edge must sit on it for least-norm to smear mass onto it.
    const Graph g = fixtures::from_pairs({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}, {"a", "c"}, {"d", "e"}});
    const Index silent = 0; // (a,b)
    REQUIRE(g.edge(silent) == Edge{0, 1});
    // Rows in canonical order: ab, ac, ad, bc, cd, de.
    Matrix e(6, 4);
    e << 0, 0, 0, 0,
         1, 0, 2, 1,
         0, 1, 1, 0,
         2, 0, 0, 1,
         1, 1, 0, 0,
         0, 3, 1, 1;
    const auto nodes = project(incidence(g), EdgeActivityMatrix(e));
    const auto b = incidence(g);
    const double top = lambda_max(b, nodes.values());
    int zeroed = 0;
    for (double factor : {0.2, 0.4, 0.6, 0.8}) {
        const auto sp = sparse_recover(b, nodes, precise(top * factor));
        if (sp.estimate.row(silent).isZero(0.0)) ++zeroed;
    }
    CHECK(zeroed > 0);
    const auto ln = least_norm(b, nodes);
    CHECK(ln.estimate.row(silent).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("select_lambda on a noiseless tree") {
    ScenarioSpec spec = fixtures::scenario(Topology::Tree, 30, 8);
    spec.timesteps = 15;
    spec.activity_density = 0.3;
    const auto inst = make_instance(spec);
    const auto b = incidence(inst.graph);
    SolverConfig cfg;
    cfg.tol = 1e-10;
    cfg.max_sweeps = 20000;
    const auto selection = select_lambda(b, inst.nodes, cfg);
    REQUIRE(selection.path.size() == 50);
    CHECK(selection.path.front().lambda == doctest::Approx(lambda_max(b, inst.nodes.values())));
    CHECK(selection.path.back().lambda == doctest::Approx(1e-4 * selection.path.front().lambda));
    CHECK(pearson(flat(inst.truth.values()), flat(selection.best.estimate)) >= 0.999);

    // Fit improves (weakly) as the penalty decreases.
    for (std::size_t k = 1; k < selection.path.size(); ++k) {
        CHECK(selection.path[k].fit_residual <= selection.path[k - 1].fit_residual * (1.0 + 1e-6) + 1e-9);
    }
}

TEST_CASE("automatic penalty through sparse_recover") {
    ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 10, 2, 15);
    spec.timesteps = 6;
    spec.activity_density = 0.3;
    const auto inst = make_instance(spec);
    SolverConfig cfg;
    cfg.lambda_grid_size = 8;
    const auto result = sparse_recover(incidence(inst.graph), inst.nodes, cfg);
    CHECK(result.lambda_used > 0.0);
    CHECK((result.estimate.array() >= 0.0).all());
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = {};
    cfg.lambda = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = {};
    cfg.lambda_grid_size = 1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK(parse_method("least-norm") == Method::LeastNorm);
    CHECK_THROWS_AS(parse_method("lasso"), ValidationError);
}

TEST_CASE("non-convergence is reported, not thrown") {
    ScenarioSpec spec = fixtures::scenario(Topology::ErdosRenyi, 20, 3, 80);
    spec.timesteps = 10;
    spec.activity_density = 0.3;
    const auto inst = make_instance(spec);
    SolverConfig cfg = precise(0.0);
    cfg.max_sweeps = 2;
    const auto result = sparse_recover(incidence(inst.graph), inst.nodes, cfg);
    CHECK_FALSE(result.converged);
    CHECK(result.sweeps == 2);
}

}
