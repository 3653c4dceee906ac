#ifndef QRNET_REPORT_HPP_
#define QRNET_REPORT_HPP_

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "qrnet/analytics.hpp"
#include "qrnet/centrality.hpp"
#include "qrnet/graph.hpp"
#include "qrnet/posts.hpp"

namespace qrnet {

/// Run-level knobs echoed into the report (thread count deliberately
/// excluded: results are thread-count independent and reports must be too).
struct ConfigEcho {
    double epsilon = 0.01;
    TimeUnit time_unit = TimeUnit::hours;
    double damping = 0.85;
    bool weighted_metrics = false;
    bool undirected = false;
    bool reverse_edges = false;
};

/// Everything one analysis run measured, serializable as report.json.
struct AnalysisReport {
    std::string site;
    ConfigEcho config;
    IngestStats ingest;
    AnomalyCounts anomalies;
    std::uint64_t node_count = 0;
    std::uint64_t edge_count = 0;
    std::uint64_t interaction_count = 0;
    RoleSummary roles;
    std::optional<MetricStats> stats;            // absent for empty graphs
    std::optional<CorrelationMatrix> correlations; // absent when undefined
    std::optional<ConvergenceInfo> convergence;
    std::vector<std::string> warnings;
    bool partial = false; // set when an iterative measure failed to converge
};

std::string_view time_unit_name(TimeUnit unit);
std::optional<TimeUnit> time_unit_from_name(std::string_view name);

nlohmann::ordered_json report_to_json(const AnalysisReport &report);

/// Round-trips the fields `qrnet compare` needs out of a report.json
/// document. Throws std::runtime_error on schema mismatch or missing fields.
AnalysisReport report_from_json(const nlohmann::json &doc);

/// Fixed-precision decimal form used in all tabular outputs: up to
/// `significant` digits, trailing zeros trimmed.
std::string format_sig(double value, int significant = 12);

/// Header `user_id,degree,betweenness,closeness,pagerank,eigenvector,harmonic`,
/// one row per node in ascending user-id order, 12 significant digits.
void write_centrality_csv(std::ostream &out, const CentralityTable &table);

/// Header `src<TAB>dst<TAB>weight<TAB>count`, edges in ascending (src, dst).
void write_edges_tsv(std::ostream &out, const QRGraph &graph);

/// GraphViz export. Source-only nodes are lightblue, target-only coral,
/// mixed-role gray.
void write_dot(std::ostream &out, const QRGraph &graph);

} // namespace qrnet

#endif // QRNET_REPORT_HPP_
