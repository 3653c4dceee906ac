#include <doctest.h>

#include <sstream>

#include "qrnet/report.hpp"
#include "qrnet/version.hpp"

using namespace qrnet;

TEST_SUITE("report") {

TEST_CASE("significant-digit formatting") {
    CHECK(format_sig(0.0) == "0");
    CHECK(format_sig(1.0) == "1");
    CHECK(format_sig(0.1) == "0.1");
    CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
    CHECK(format_sig(123456.789) == "123456.789");
    CHECK(format_sig(1e-12) == "1e-12");
    CHECK(format_sig(2.0 / 3.0, 6) == "0.666667");
}

TEST_CASE("centrality csv layout") {
    CentralityTable table;
    table.node_ids = {3, 17};
    table.degree = {1.0, 0.5};
    table.betweenness = {0.0, 0.0};
    table.closeness = {0.25, 1.0 / 3.0};
    table.pagerank = {0.6, 0.4};
    table.eigenvector = {0.0, 0.0};
    table.harmonic = {1.5, 2.0};
    std::ostringstream out;
    write_centrality_csv(out, table);
    CHECK(out.str() == "user_id,degree,betweenness,closeness,pagerank,eigenvector,harmonic\n"
                       "3,1,0,0.25,0.6,0,1.5\n"
                       "17,0.5,0,0.333333333333,0.4,0,2\n");
}

TEST_CASE("edge tsv layout") {
    const QRGraph g = QRGraph::from_edges({1, 2, 5}, {{2, 1, 0.5, 2}, {1, 5, 1.25, 1}});
    std::ostringstream out;
    write_edges_tsv(out, g);
    CHECK(out.str() == "src\tdst\tweight\tcount\n"
                       "1\t5\t1.25\t1\n"
                       "2\t1\t0.5\t2\n");
}

TEST_CASE("dot export colors roles") {
    const QRGraph g = QRGraph::from_edges({1, 2, 3}, {{1, 2, 1.0, 1}, {2, 3, 2.0, 1}});
    std::ostringstream out;
    write_dot(out, g);
    const std::string dot = out.str();
    CHECK(dot.find("\"1\" [fillcolor=lightblue]") != std::string::npos); // source-only
    CHECK(dot.find("\"3\" [fillcolor=coral]") != std::string::npos);     // target-only
    CHECK(dot.find("\"2\" [fillcolor=lightgray]") != std::string::npos); // both
    CHECK(dot.find("\"1\" -> \"2\" [weight=1, count=1]") != std::string::npos);
}

TEST_CASE("report json round-trips the compare fields") {
    AnalysisReport report;
    report.site = "demo";
    report.ingest.rows_read = 10;
    report.ingest.questions = 4;
    report.ingest.answers = 5;
    report.node_count = 6;
    report.edge_count = 5;
    report.interaction_count = 5;
    report.roles.questioners_only = 3;
    report.roles.responders_only = 2;
    report.roles.both = 1;
    report.roles.qr_ratio = 1.5;
    MetricStats stats;
    for (auto &m : stats.measures) {
        m.mean = 0.25;
        m.std_dev = 0.1;
    }
    report.stats = stats;

    const auto doc = report_to_json(report);
    CHECK(doc["schema_version"] == kSchemaVersion);
    CHECK(doc["roles"]["qr_ratio"] == 1.5);

    const AnalysisReport parsed = report_from_json(doc);
    CHECK(parsed.site == "demo");
    CHECK(parsed.ingest.questions == 4);
    CHECK(parsed.node_count == 6);
    CHECK(parsed.roles.qr_ratio == 1.5);
    REQUIRE(parsed.stats);
    CHECK(parsed.stats->measures[0].mean == 0.25);
}

TEST_CASE("schema mismatch is rejected") {
    AnalysisReport report;
    report.site = "demo";
    auto doc = report_to_json(report);
    doc["schema_version"] = kSchemaVersion + 1;
    CHECK_THROWS_AS(report_from_json(doc), std::runtime_error);
    nlohmann::json not_a_report = {{"hello", "world"}};
    CHECK_THROWS_AS(report_from_json(not_a_report), std::runtime_error);
}

TEST_CASE("undefined ratio serializes as null") {
    AnalysisReport report;
    report.site = "demo";
    const auto doc = report_to_json(report);
    CHECK(doc["roles"]["qr_ratio"].is_null());
    CHECK(doc["centrality_stats"].is_null());
    CHECK(doc["correlations"].is_null());
}

TEST_CASE("time unit names") {
    CHECK(time_unit_name(TimeUnit::hours) == "hours");
    CHECK(time_unit_from_name("minutes") == TimeUnit::minutes);
    CHECK(time_unit_from_name("seconds") == TimeUnit::seconds);
    CHECK(!time_unit_from_name("days"));
}

} // TEST_SUITE
