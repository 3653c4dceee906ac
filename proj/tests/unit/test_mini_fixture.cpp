#include <doctest.h>

#include <cmath>
#include <fstream>

#include "qrnet/analytics.hpp"
#include "qrnet/centrality.hpp"
#include "qrnet/graph.hpp"
#include "qrnet/posts.hpp"
#include "test_util.hpp"

using namespace qrnet;

// The bundled mini fixture backs the golden end-to-end files; this suite
// pins its semantics independently: hand-checked counts, hand-checked edge
// weights, and a full cross-check of all six measures against the
// brute-force oracle on the same 8-node graph.

namespace {

ParsedPosts load_fixture() {
    std::ifstream in(std::string(QRNET_SOURCE_DIR) + "/tests/fixtures/mini_posts.xml",
                     std::ios::binary);
    REQUIRE(in.good());
    return parse_posts(in);
}

} // namespace

TEST_SUITE("mini_fixture") {

TEST_CASE("ingest counters") {
    const auto parsed = load_fixture();
    CHECK(parsed.stats.rows_read == 15);
    CHECK(parsed.stats.questions == 6);
    CHECK(parsed.stats.answers == 7);
    CHECK(parsed.stats.skipped_other_type == 1);   // the tag-wiki row
    CHECK(parsed.stats.skipped_missing_owner == 1); // the ownerless question
    CHECK(parsed.stats.skipped_malformed == 0);
}

TEST_CASE("graph shape and hand-computed weights") {
    const auto parsed = load_fixture();
    const DeriveResult derived = derive_interactions(parsed.records);
    CHECK(derived.interactions.size() == 7);
    CHECK(derived.anomalies.orphan_answers == 0);
    CHECK(derived.anomalies.self_answers == 0);
    CHECK(derived.anomalies.negative_response_time == 0);

    const QRGraph g = build_graph(derived.interactions);
    CHECK(g.node_count() == 8);
    CHECK(g.edge_count() == 7);
    CHECK(g.node_ids() == std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8});

    // Response times were chosen to make 1/(r + 0.01) come out round.
    const struct {
        std::int64_t src, dst;
        double weight;
    } expected[] = {
        {1, 2, 1.0}, {1, 3, 0.5}, {2, 1, 4.0},  {3, 4, 0.25},
        {4, 1, 0.1}, {5, 6, 10.0}, {7, 8, 0.01},
    };
    for (const auto &e : expected) {
        const auto edge = g.find_edge(e.src, e.dst);
        REQUIRE(edge);
        CHECK(edge->weight == doctest::Approx(e.weight).epsilon(1e-12));
        CHECK(edge->count == 1);
    }
}

TEST_CASE("roles") {
    const auto parsed = load_fixture();
    const DeriveResult derived = derive_interactions(parsed.records);
    const RoleClassification roles = classify_roles(derived.interactions);
    CHECK(roles.summary.questioners_only == 2); // users 5, 7
    CHECK(roles.summary.responders_only == 2);  // users 6, 8
    CHECK(roles.summary.both == 4);             // users 1..4
    REQUIRE(roles.summary.qr_ratio);
    CHECK(*roles.summary.qr_ratio == doctest::Approx(1.0));
}

TEST_CASE("all six measures match the oracle on the fixture graph") {
    const auto parsed = load_fixture();
    const DeriveResult derived = derive_interactions(parsed.records);
    const QRGraph g = build_graph(derived.interactions);

    auto dense = oracle::DenseGraph::empty(8);
    for (const QRGraph::Edge &edge : g.edges()) {
        dense.add_edge(static_cast<int>(edge.src) - 1, static_cast<int>(edge.dst) - 1);
    }

    const CentralityTable table = compute_all_centralities(g);
    const auto deg = oracle::degree(dense);
    const auto bc = oracle::betweenness(dense);
    const auto close = oracle::closeness(dense);
    const auto harm = oracle::harmonic(dense);
    const auto pr = oracle::pagerank(dense);
    const auto ev = oracle::eigenvector(dense);

    REQUIRE(!ev.degenerate); // the 2-cycle + 3-cycle core is aperiodic
    CHECK(table.convergence.eigenvector_converged);
    for (int v = 0; v < 8; ++v) {
        CHECK(table.degree[v] == doctest::Approx(deg[v]).epsilon(1e-9));
        CHECK(table.betweenness[v] == doctest::Approx(bc[v]).epsilon(1e-9));
        CHECK(table.closeness[v] == doctest::Approx(close[v]).epsilon(1e-9));
        CHECK(table.harmonic[v] == doctest::Approx(harm[v]).epsilon(1e-9));
        CHECK(table.pagerank[v] == doctest::Approx(pr[v]).epsilon(1e-6));
        CHECK(table.eigenvector[v] == doctest::Approx(ev.scores[v]).epsilon(1e-6));
    }

    // The dominant eigenvalue of the {1,2,3,4} core satisfies l^3 = l + 1;
    // entries fall off as 1/l per step away from node 1.
    const double l = 1.32471795724475; // plastic number
    CHECK(table.eigenvector[1] == doctest::Approx(table.eigenvector[0] / l).epsilon(1e-6));
    CHECK(table.eigenvector[2] == doctest::Approx(table.eigenvector[0] / l).epsilon(1e-6));
    CHECK(table.eigenvector[3] == doctest::Approx(table.eigenvector[0] / (l * l)).epsilon(1e-6));
    for (int v = 4; v < 8; ++v) {
        CHECK(table.eigenvector[v] == doctest::Approx(0.0));
    }
}

} // TEST_SUITE
