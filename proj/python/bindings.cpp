#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "qrnet/analytics.hpp"
#include "qrnet/centrality.hpp"
#include "qrnet/graph.hpp"
#include "qrnet/interactions.hpp"
#include "qrnet/posts.hpp"
#include "qrnet/report.hpp"
#include "qrnet/version.hpp"

namespace py = pybind11;
using namespace qrnet;

namespace {

TimeUnit unit_from_string(const std::string &name) {
    const auto unit = time_unit_from_name(name);
    if (!unit) {
        throw py::value_error("time_unit must be 'hours', 'minutes', or 'seconds'");
    }
    return *unit;
}

std::pair<std::vector<PostRecord>, IngestStats> parse_posts_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw py::value_error("cannot read " + path);
    }
    ParsedPosts parsed = parse_posts(in);
    return {std::move(parsed.records), parsed.stats};
}

py::dict convergence_dict(const ConvergenceInfo &info) {
    py::dict d;
    d["pagerank_iterations"] = info.pagerank_iterations;
    d["pagerank_converged"] = info.pagerank_converged;
    d["pagerank_residual"] = info.pagerank_residual;
    d["eigenvector_iterations"] = info.eigenvector_iterations;
    d["eigenvector_converged"] = info.eigenvector_converged;
    d["eigenvector_degenerate"] = info.eigenvector_degenerate;
    return d;
}

std::string analyze_file_json(const std::string &path, const std::string &site, double epsilon,
                              const std::string &time_unit, double damping, bool weighted,
                              bool undirected, bool reverse_edges, unsigned threads) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw py::value_error("cannot read " + path);
    }
    AnalysisReport report;
    report.site = site;
    report.config.epsilon = epsilon;
    report.config.time_unit = unit_from_string(time_unit);
    report.config.damping = damping;
    report.config.weighted_metrics = weighted;
    report.config.undirected = undirected;
    report.config.reverse_edges = reverse_edges;

    const ParsedPosts parsed = parse_posts(in);
    report.ingest = parsed.stats;
    const DeriveResult derived = derive_interactions(parsed.records);
    report.anomalies = derived.anomalies;

    BuildOptions build;
    build.epsilon = epsilon;
    build.time_unit = report.config.time_unit;
    build.reverse_edges = reverse_edges;
    const QRGraph graph = build_graph(derived.interactions, build);
    report.node_count = graph.node_count();
    report.edge_count = graph.edge_count();
    report.interaction_count = derived.interactions.size();
    report.roles = classify_roles(derived.interactions).summary;

    if (graph.node_count() >= 2) {
        CentralityConfig config;
        config.weighted = weighted;
        config.undirected = undirected;
        config.damping = damping;
        config.threads = threads;
        const CentralityTable table = compute_all_centralities(graph, config);
        report.convergence = table.convergence;
        report.warnings = table.warnings;
        report.stats = metric_stats(table);
        if (graph.node_count() >= 3) {
            try {
                report.correlations = correlation_matrix(table);
            } catch (const std::invalid_argument &) {
            }
        }
        report.partial = !table.convergence.pagerank_converged;
    }
    return report_to_json(report).dump();
}

} // namespace

PYBIND11_MODULE(_qrnet, m) {
    m.doc() = "Questioner-responder interaction network analytics for Stack Exchange dumps";
    m.attr("__version__") = kVersion;

    py::enum_<PostType>(m, "PostType")
        .value("question", PostType::question)
        .value("answer", PostType::answer);

    py::class_<PostRecord>(m, "PostRecord")
        .def(py::init<>())
        .def_readwrite("post_id", &PostRecord::post_id)
        .def_readwrite("type", &PostRecord::type)
        .def_readwrite("parent_id", &PostRecord::parent_id)
        .def_readwrite("owner_user_id", &PostRecord::owner_user_id)
        .def_readwrite("creation_ms", &PostRecord::creation_ms)
        .def("__repr__", [](const PostRecord &r) {
            std::ostringstream out;
            out << "PostRecord(id=" << r.post_id
                << ", type=" << (r.type == PostType::question ? "question" : "answer") << ")";
            return out.str();
        });

    py::class_<IngestStats>(m, "IngestStats")
        .def_readonly("rows_read", &IngestStats::rows_read)
        .def_readonly("questions", &IngestStats::questions)
        .def_readonly("answers", &IngestStats::answers)
        .def_readonly("skipped_other_type", &IngestStats::skipped_other_type)
        .def_readonly("skipped_malformed", &IngestStats::skipped_malformed)
        .def_readonly("skipped_missing_owner", &IngestStats::skipped_missing_owner);

    py::class_<Interaction>(m, "Interaction")
        .def(py::init([](std::int64_t questioner, std::int64_t responder,
                         double response_time_hours, std::int64_t question_id,
                         std::int64_t answer_id) {
                 return Interaction{questioner, responder, response_time_hours, question_id,
                                    answer_id};
             }),
             py::arg("questioner"), py::arg("responder"), py::arg("response_time_hours"),
             py::arg("question_id") = 0, py::arg("answer_id") = 0)
        .def_readonly("questioner", &Interaction::questioner)
        .def_readonly("responder", &Interaction::responder)
        .def_readonly("response_time_hours", &Interaction::response_time_hours)
        .def_readonly("question_id", &Interaction::question_id)
        .def_readonly("answer_id", &Interaction::answer_id);

    py::class_<AnomalyCounts>(m, "AnomalyCounts")
        .def_readonly("negative_response_time", &AnomalyCounts::negative_response_time)
        .def_readonly("self_answers", &AnomalyCounts::self_answers)
        .def_readonly("orphan_answers", &AnomalyCounts::orphan_answers);

    m.def("parse_posts_file", &parse_posts_file, py::arg("path"),
          "Parse a decompressed Posts.xml file; returns (records, stats).");

    m.def(
        "derive_interactions",
        [](const std::vector<PostRecord> &posts) {
            DeriveResult result = derive_interactions(posts);
            return std::make_pair(std::move(result.interactions), result.anomalies);
        },
        py::arg("posts"), "Join answers to questions; returns (interactions, anomalies).");

    m.def("edge_weight", &edge_weight, py::arg("response_time"), py::arg("epsilon") = 0.01,
          "The response-time edge weight 1/(r + epsilon).");

    py::class_<QRGraph>(m, "Graph")
        .def_property_readonly("node_count", &QRGraph::node_count)
        .def_property_readonly("edge_count", &QRGraph::edge_count)
        .def_property_readonly("epsilon", &QRGraph::epsilon)
        .def_property_readonly("node_ids",
                               [](const QRGraph &g) { return g.node_ids(); })
        .def("edges",
             [](const QRGraph &g) {
                 std::vector<std::tuple<std::int64_t, std::int64_t, double, std::uint64_t>> out;
                 for (const QRGraph::Edge &e : g.edges()) {
                     out.emplace_back(e.src, e.dst, e.weight, e.count);
                 }
                 return out;
             },
             "Edges as (src, dst, weight, count), ascending (src, dst).")
        .def("find_edge",
             [](const QRGraph &g, std::int64_t src, std::int64_t dst)
                 -> std::optional<std::tuple<double, std::uint64_t>> {
                 const auto e = g.find_edge(src, dst);
                 if (!e) {
                     return std::nullopt;
                 }
                 return std::make_tuple(e->weight, e->count);
             },
             py::arg("src"), py::arg("dst"), "(weight, count) of an edge, or None.")
        .def("symmetrized", &QRGraph::symmetrized)
        .def_static(
            "from_edges",
            [](std::vector<std::int64_t> nodes,
               const std::vector<std::tuple<std::int64_t, std::int64_t, double, std::uint64_t>>
                   &edges,
               double epsilon) {
                std::vector<QRGraph::Edge> converted;
                converted.reserve(edges.size());
                for (const auto &[src, dst, weight, count] : edges) {
                    converted.push_back({src, dst, weight, count});
                }
                return QRGraph::from_edges(std::move(nodes), std::move(converted), epsilon);
            },
            py::arg("nodes"), py::arg("edges"), py::arg("epsilon") = 0.01);

    m.def(
        "build_graph",
        [](const std::vector<Interaction> &interactions, double epsilon,
           const std::string &time_unit, bool reverse_edges) {
            BuildOptions options;
            options.epsilon = epsilon;
            options.time_unit = unit_from_string(time_unit);
            options.reverse_edges = reverse_edges;
            return build_graph(interactions, options);
        },
        py::arg("interactions"), py::arg("epsilon") = 0.01, py::arg("time_unit") = "hours",
        py::arg("reverse_edges") = false);

    py::class_<CentralityTable>(m, "CentralityTable")
        .def_readonly("node_ids", &CentralityTable::node_ids)
        .def_readonly("degree", &CentralityTable::degree)
        .def_readonly("betweenness", &CentralityTable::betweenness)
        .def_readonly("closeness", &CentralityTable::closeness)
        .def_readonly("pagerank", &CentralityTable::pagerank)
        .def_readonly("eigenvector", &CentralityTable::eigenvector)
        .def_readonly("harmonic", &CentralityTable::harmonic)
        .def_readonly("warnings", &CentralityTable::warnings)
        .def_property_readonly(
            "convergence",
            [](const CentralityTable &t) { return convergence_dict(t.convergence); });

    m.def(
        "compute_centralities",
        [](const QRGraph &g, bool weighted, bool undirected, double damping, double tolerance,
           std::uint32_t max_iterations, unsigned threads) {
            CentralityConfig config;
            config.weighted = weighted;
            config.undirected = undirected;
            config.damping = damping;
            config.tolerance = tolerance;
            config.max_iterations = max_iterations;
            config.threads = threads;
            return compute_all_centralities(g, config);
        },
        py::arg("graph"), py::arg("weighted") = false, py::arg("undirected") = false,
        py::arg("damping") = 0.85, py::arg("tolerance") = 1e-9, py::arg("max_iterations") = 1000,
        py::arg("threads") = 0, "All six centrality measures on a graph with >= 2 nodes.");

    m.def(
        "classify_roles",
        [](const std::vector<Interaction> &interactions) {
            const RoleClassification result = classify_roles(interactions);
            py::dict roles;
            for (const auto &[user, role] : result.roles) {
                const char *name = role == UserRole::questioner_only ? "questioner_only"
                                   : role == UserRole::responder_only ? "responder_only"
                                                                      : "both";
                roles[py::int_(user)] = name;
            }
            py::dict out;
            out["questioners_only"] = result.summary.questioners_only;
            out["responders_only"] = result.summary.responders_only;
            out["both"] = result.summary.both;
            out["qr_ratio"] = result.summary.qr_ratio;
            out["roles"] = roles;
            return out;
        },
        py::arg("interactions"));

    m.def("qr_ratio", &qr_ratio, py::arg("questioners_only"), py::arg("responders_only"));

    m.def(
        "metric_stats",
        [](const CentralityTable &table, bool population_std) {
            const MetricStats stats = metric_stats(table, population_std);
            py::dict out;
            for (std::size_t i = 0; i < kStatsMeasureOrder.size(); ++i) {
                py::dict entry;
                entry["mean"] = stats.measures[i].mean;
                entry["std"] = stats.measures[i].std_dev;
                out[std::string(kStatsMeasureOrder[i]).c_str()] = entry;
            }
            return out;
        },
        py::arg("table"), py::arg("population_std") = false);

    m.def(
        "correlation_matrix",
        [](const CentralityTable &table) {
            const CorrelationMatrix matrix = correlation_matrix(table);
            py::list order;
            for (const auto &name : kCorrelationMeasureOrder) {
                order.append(std::string(name));
            }
            py::list rows;
            for (const auto &row : matrix.values) {
                py::list cells;
                for (const auto &cell : row) {
                    cells.append(cell);
                }
                rows.append(cells);
            }
            py::dict out;
            out["order"] = order;
            out["matrix"] = rows;
            return out;
        },
        py::arg("table"));

    m.def("analyze_file_json", &analyze_file_json, py::arg("path"), py::arg("site") = "",
          py::arg("epsilon") = 0.01, py::arg("time_unit") = "hours", py::arg("damping") = 0.85,
          py::arg("weighted") = false, py::arg("undirected") = false,
          py::arg("reverse_edges") = false, py::arg("threads") = 0,
          "Full pipeline on a Posts.xml file; returns the report as a JSON string.");
}
