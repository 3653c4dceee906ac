#include "qrnet/report.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qrnet/version.hpp"

namespace qrnet {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view time_unit_name(TimeUnit unit) {
    switch (unit) {
    case TimeUnit::hours:
        return "hours";
    case TimeUnit::minutes:
        return "minutes";
    case TimeUnit::seconds:
        return "seconds";
    }
    return "hours";
}

std::optional<TimeUnit> time_unit_from_name(std::string_view name) {
    if (name == "hours") {
        return TimeUnit::hours;
    }
    if (name == "minutes") {
        return TimeUnit::minutes;
    }
    if (name == "seconds") {
        return TimeUnit::seconds;
    }
    return std::nullopt;
}

std::string format_sig(double value, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
    return buf;
}

namespace {

ordered_json json_or_null(const std::optional<double> &value) {
    if (!value) {
        return nullptr;
    }
    return *value;
}

ordered_json stats_to_json(const MetricStats &stats) {
    ordered_json out;
    for (std::size_t i = 0; i < kStatsMeasureOrder.size(); ++i) {
        out[std::string(kStatsMeasureOrder[i])] = {
            {"mean", stats.measures[i].mean},
            {"std", json_or_null(stats.measures[i].std_dev)},
        };
    }
    return out;
}

ordered_json correlations_to_json(const CorrelationMatrix &matrix) {
    ordered_json order = ordered_json::array();
    for (const auto &name : kCorrelationMeasureOrder) {
        order.push_back(std::string(name));
    }
    ordered_json values = ordered_json::array();
    for (const auto &row : matrix.values) {
        ordered_json json_row = ordered_json::array();
        for (const auto &cell : row) {
            json_row.push_back(json_or_null(cell));
        }
        values.push_back(std::move(json_row));
    }
    return ordered_json{{"order", std::move(order)}, {"matrix", std::move(values)}};
}

} // namespace

ordered_json report_to_json(const AnalysisReport &report) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = {{"name", "qrnet"}, {"version", kVersion}};
    doc["site"] = report.site;
    doc["config"] = {
        {"epsilon", report.config.epsilon},
        {"time_unit", std::string(time_unit_name(report.config.time_unit))},
        {"damping", report.config.damping},
        {"weighted_metrics", report.config.weighted_metrics},
        {"undirected", report.config.undirected},
        {"reverse_edges", report.config.reverse_edges},
    };
    doc["ingest"] = {
        {"rows_read", report.ingest.rows_read},
        {"questions", report.ingest.questions},
        {"answers", report.ingest.answers},
        {"skipped_other_type", report.ingest.skipped_other_type},
        {"skipped_malformed", report.ingest.skipped_malformed},
        {"skipped_missing_owner", report.ingest.skipped_missing_owner},
    };
    doc["anomalies"] = {
        {"negative_response_time", report.anomalies.negative_response_time},
        {"self_answers", report.anomalies.self_answers},
        {"orphan_answers", report.anomalies.orphan_answers},
    };
    doc["graph"] = {
        {"nodes", report.node_count},
        {"edges", report.edge_count},
        {"interactions", report.interaction_count},
    };
    doc["roles"] = {
        {"questioners_only", report.roles.questioners_only},
        {"responders_only", report.roles.responders_only},
        {"both", report.roles.both},
        {"qr_ratio", json_or_null(report.roles.qr_ratio)},
    };
    doc["centrality_stats"] = report.stats ? stats_to_json(*report.stats) : ordered_json(nullptr);
    doc["correlations"] =
        report.correlations ? correlations_to_json(*report.correlations) : ordered_json(nullptr);
    if (report.convergence) {
        doc["convergence"] = {
            {"pagerank",
             {{"iterations", report.convergence->pagerank_iterations},
              {"converged", report.convergence->pagerank_converged},
              {"residual", report.convergence->pagerank_residual}}},
            {"eigenvector",
             {{"iterations", report.convergence->eigenvector_iterations},
              {"converged", report.convergence->eigenvector_converged},
              {"degenerate", report.convergence->eigenvector_degenerate}}},
        };
    } else {
        doc["convergence"] = nullptr;
    }
    doc["warnings"] = report.warnings;
    doc["partial"] = report.partial;
    return doc;
}

AnalysisReport report_from_json(const json &doc) {
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
        throw std::runtime_error("not a qrnet report: missing schema_version");
    }
    if (doc["schema_version"].get<int>() != kSchemaVersion) {
        throw std::runtime_error("report schema version " +
                                 std::to_string(doc["schema_version"].get<int>()) +
                                 " does not match tool schema " + std::to_string(kSchemaVersion));
    }
    AnalysisReport report;
    report.site = doc.at("site").get<std::string>();
    const auto &ingest = doc.at("ingest");
    report.ingest.rows_read = ingest.at("rows_read").get<std::uint64_t>();
    report.ingest.questions = ingest.at("questions").get<std::uint64_t>();
    report.ingest.answers = ingest.at("answers").get<std::uint64_t>();
    const auto &graph = doc.at("graph");
    report.node_count = graph.at("nodes").get<std::uint64_t>();
    report.edge_count = graph.at("edges").get<std::uint64_t>();
    const auto &roles = doc.at("roles");
    report.roles.questioners_only = roles.at("questioners_only").get<std::uint64_t>();
    report.roles.responders_only = roles.at("responders_only").get<std::uint64_t>();
    report.roles.both = roles.at("both").get<std::uint64_t>();
    if (roles.contains("qr_ratio") && roles["qr_ratio"].is_number()) {
        report.roles.qr_ratio = roles["qr_ratio"].get<double>();
    }
    if (doc.contains("centrality_stats") && doc["centrality_stats"].is_object()) {
        MetricStats stats;
        for (std::size_t i = 0; i < kStatsMeasureOrder.size(); ++i) {
            const auto &entry = doc["centrality_stats"].at(std::string(kStatsMeasureOrder[i]));
            stats.measures[i].mean = entry.at("mean").get<double>();
            if (entry.contains("std") && entry["std"].is_number()) {
                stats.measures[i].std_dev = entry["std"].get<double>();
            }
        }
        report.stats = stats;
    }
    return report;
}

void write_centrality_csv(std::ostream &out, const CentralityTable &table) {
    out << "user_id,degree,betweenness,closeness,pagerank,eigenvector,harmonic\n";
    for (std::size_t i = 0; i < table.node_ids.size(); ++i) {
        out << table.node_ids[i] << ',' << format_sig(table.degree[i]) << ','
            << format_sig(table.betweenness[i]) << ',' << format_sig(table.closeness[i]) << ','
            << format_sig(table.pagerank[i]) << ',' << format_sig(table.eigenvector[i]) << ','
            << format_sig(table.harmonic[i]) << '\n';
    }
}

void write_edges_tsv(std::ostream &out, const QRGraph &graph) {
    out << "src\tdst\tweight\tcount\n";
    for (const QRGraph::Edge &edge : graph.edges()) {
        out << edge.src << '\t' << edge.dst << '\t' << format_sig(edge.weight) << '\t'
            << edge.count << '\n';
    }
}

void write_dot(std::ostream &out, const QRGraph &graph) {
    out << "digraph qr {\n  node [style=filled];\n";
    for (NodeIndex v = 0; v < graph.node_count(); ++v) {
        const bool source_only = graph.out_degree(v) > 0 && graph.in_degree(v) == 0;
        const bool target_only = graph.in_degree(v) > 0 && graph.out_degree(v) == 0;
        const char *color = source_only ? "lightblue" : (target_only ? "coral" : "lightgray");
        out << "  \"" << graph.id_of(v) << "\" [fillcolor=" << color << "];\n";
    }
    for (const QRGraph::Edge &edge : graph.edges()) {
        out << "  \"" << edge.src << "\" -> \"" << edge.dst
            << "\" [weight=" << format_sig(edge.weight) << ", count=" << edge.count << "];\n";
    }
    out << "}\n";
}

} // namespace qrnet
