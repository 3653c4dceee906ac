#include <doctest.h>

#include <algorithm>
#include <random>

#include "qrnet/graph.hpp"

using namespace qrnet;

namespace {

Interaction make(std::int64_t q, std::int64_t r, double hours, std::int64_t qid = 0,
                 std::int64_t aid = 0) {
    return Interaction{q, r, hours, qid == 0 ? q * 1000 + r : qid,
                       aid == 0 ? static_cast<std::int64_t>(hours * 100.0) + 7 : aid};
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("repeated pairs merge by summed weight") {
    const std::vector<Interaction> interactions = {make(1, 2, 0.99, 10, 11),
                                                   make(1, 2, 4.99, 10, 12)};
    const QRGraph g = build_graph(interactions);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    const auto edge = g.find_edge(1, 2);
    REQUIRE(edge);
    CHECK(edge->weight == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(edge->count == 2);
}

TEST_CASE("opposite directions stay distinct") {
    const std::vector<Interaction> interactions = {make(1, 2, 0.99, 10, 11),
                                                   make(2, 1, 0.99, 12, 13)};
    const QRGraph g = build_graph(interactions);
    CHECK(g.edge_count() == 2);
    CHECK(g.find_edge(1, 2)->weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.find_edge(2, 1)->weight == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty input gives an empty graph") {
    const QRGraph g = build_graph({});
    CHECK(g.node_count() == 0);
    CHECK(g.edge_count() == 0);
    CHECK(g.edges().empty());
}

TEST_CASE("node ids are ascending and indexable") {
    const std::vector<Interaction> interactions = {make(42, 7, 1.0, 1, 2),
                                                   make(3, 42, 2.0, 3, 4)};
    const QRGraph g = build_graph(interactions);
    CHECK(g.node_ids() == std::vector<std::int64_t>{3, 7, 42});
    CHECK(g.index_of(7) == 1);
    CHECK(!g.index_of(8));
    CHECK(g.id_of(2) == 42);
}

TEST_CASE("time unit rescales the weight formula") {
    const std::vector<Interaction> one = {make(1, 2, 1.0, 10, 11)};
    BuildOptions minutes;
    minutes.time_unit = TimeUnit::minutes;
    const QRGraph g = build_graph(one, minutes);
    CHECK(g.find_edge(1, 2)->weight == doctest::Approx(1.0 / 60.01).epsilon(1e-12));

    BuildOptions seconds;
    seconds.time_unit = TimeUnit::seconds;
    const QRGraph g2 = build_graph(one, seconds);
    CHECK(g2.find_edge(1, 2)->weight == doctest::Approx(1.0 / 3600.01).epsilon(1e-12));
}

TEST_CASE("reverse edges flips direction") {
    const std::vector<Interaction> interactions = {make(1, 2, 0.99, 10, 11)};
    BuildOptions options;
    options.reverse_edges = true;
    const QRGraph g = build_graph(interactions, options);
    CHECK(!g.find_edge(1, 2));
    CHECK(g.find_edge(2, 1));
}

TEST_CASE("epsilon is validated and configurable") {
    const std::vector<Interaction> one = {make(1, 2, 0.5, 10, 11)};
    BuildOptions bad;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(build_graph(one, bad), std::invalid_argument);
    BuildOptions half;
    half.epsilon = 0.5;
    CHECK(build_graph(one, half).find_edge(1, 2)->weight == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("self interactions are rejected") {
    const std::vector<Interaction> bad = {make(5, 5, 1.0, 10, 11)};
    CHECK_THROWS_AS(build_graph(bad), std::invalid_argument);
}

TEST_CASE("aggregation never creates edges") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<std::int64_t> user(1, 12);
    std::uniform_real_distribution<double> hours(0.0, 48.0);
    for (int round = 0; round < 30; ++round) {
        std::vector<Interaction> interactions;
        const int count = static_cast<int>(rng() % 60);
        for (int i = 0; i < count; ++i) {
            std::int64_t q = user(rng), r = user(rng);
            if (q == r) {
                continue;
            }
            interactions.push_back(make(q, r, hours(rng), i + 1, 1000 + i));
        }
        const QRGraph g = build_graph(interactions);
        CHECK(g.edge_count() <= interactions.size());
        CHECK(g.total_interactions() == interactions.size());
    }
}

TEST_CASE("permutation invariance, bit for bit") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<std::int64_t> user(1, 9);
    std::uniform_real_distribution<double> hours(0.0, 48.0);
    std::vector<Interaction> interactions;
    for (int i = 0; i < 200; ++i) {
        std::int64_t q = user(rng), r = user(rng);
        if (q == r) {
            continue;
        }
        interactions.push_back(make(q, r, hours(rng), i + 1, 1000 + i));
    }
    const QRGraph reference = build_graph(interactions);
    const auto reference_edges = reference.edges();
    for (int round = 0; round < 5; ++round) {
        std::shuffle(interactions.begin(), interactions.end(), rng);
        const auto edges = build_graph(interactions).edges();
        REQUIRE(edges.size() == reference_edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            CHECK(edges[i].src == reference_edges[i].src);
            CHECK(edges[i].dst == reference_edges[i].dst);
            CHECK(edges[i].weight == reference_edges[i].weight); // exact
            CHECK(edges[i].count == reference_edges[i].count);
        }
    }
}

TEST_CASE("merged weight equals the sum of interaction weights") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> hours(0.0, 100.0);
    std::vector<Interaction> interactions;
    std::vector<double> times;
    for (int i = 0; i < 50; ++i) {
        const double t = hours(rng);
        times.push_back(t);
        interactions.push_back(make(1, 2, t, i + 1, 1000 + i));
    }
    const QRGraph g = build_graph(interactions);
    double expected = 0.0;
    std::sort(times.begin(), times.end());
    for (const double t : times) {
        expected += edge_weight(t, 0.01);
    }
    CHECK(g.find_edge(1, 2)->weight == doctest::Approx(expected).epsilon(1e-12));
    CHECK(g.find_edge(1, 2)->count == 50);
}

TEST_CASE("CSR adjacency is sorted and consistent") {
    const std::vector<Interaction> interactions = {make(1, 3, 1.0, 1, 2), make(1, 2, 2.0, 3, 4),
                                                   make(2, 3, 3.0, 5, 6), make(3, 1, 4.0, 7, 8)};
    const QRGraph g = build_graph(interactions);
    const auto n1 = *g.index_of(1);
    const auto out = g.out_neighbors(n1);
    CHECK(std::is_sorted(out.begin(), out.end()));
    CHECK(g.out_degree(n1) == 2);
    CHECK(g.in_degree(n1) == 1);
    const auto n3 = *g.index_of(3);
    const auto in = g.in_neighbors(n3);
    CHECK(std::is_sorted(in.begin(), in.end()));
    CHECK(g.in_degree(n3) == 2);
}

TEST_CASE("symmetrized projection mirrors and merges") {
    const std::vector<Interaction> interactions = {make(1, 2, 0.99, 1, 2), make(2, 1, 0.24, 3, 4),
                                                   make(1, 3, 0.99, 5, 6)};
    const QRGraph g = build_graph(interactions);
    const QRGraph sym = g.symmetrized();
    CHECK(sym.node_count() == 3);
    CHECK(sym.edge_count() == 4); // 1<->2 merged both ways, 1<->3 mirrored
    CHECK(sym.find_edge(1, 2)->weight == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(sym.find_edge(2, 1)->weight == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(sym.find_edge(3, 1)->weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sym.find_edge(1, 2)->count == 2);
}

TEST_CASE("from_edges validates input") {
    using Edge = QRGraph::Edge;
    CHECK_THROWS_AS(QRGraph::from_edges({1, 2}, {Edge{1, 1, 1.0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(QRGraph::from_edges({1, 2}, {Edge{1, 3, 1.0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(QRGraph::from_edges({1, 2}, {Edge{1, 2, 0.0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(QRGraph::from_edges({1, 2}, {Edge{1, 2, 1.0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(QRGraph::from_edges({1, 2}, {Edge{1, 2, 1.0, 1}}, 0.0), std::invalid_argument);

    const QRGraph g = QRGraph::from_edges({5, 1, 3, 1}, {Edge{1, 3, 2.0, 1}, Edge{1, 3, 1.0, 2}});
    CHECK(g.node_count() == 3); // deduplicated, isolated node kept
    CHECK(g.edge_count() == 1);
    CHECK(g.find_edge(1, 3)->weight == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(g.find_edge(1, 3)->count == 3);
}

} // TEST_SUITE
