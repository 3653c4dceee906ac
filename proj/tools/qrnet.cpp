#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrnet/analytics.hpp"
#include "qrnet/centrality.hpp"
#include "qrnet/fetch.hpp"
#include "qrnet/graph.hpp"
#include "qrnet/posts.hpp"
#include "qrnet/report.hpp"
#include "qrnet/version.hpp"

namespace fs = std::filesystem;
using namespace qrnet;

namespace {

// Exit codes, stable and documented in the README:
//   0 success, 2 unusable input/config, 3 parse hard error,
//   4 metric non-convergence (partial report written), 5 transfer failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitNoConvergence = 4;
constexpr int kExitTransfer = 5;

struct AnalyzeArgs {
    std::string posts_path;
    std::string out_dir;
    std::string site;
    double epsilon = 0.01;
    std::string time_unit = "hours";
    double damping = 0.85;
    bool weighted = false;
    bool undirected = false;
    bool reverse_edges = false;
    unsigned threads = 0;
    std::vector<std::string> formats{"csv", "json", "edgelist"};
};

std::string format_ratio(const std::optional<double> &ratio) {
    if (!ratio) {
        return "undefined";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", *ratio);
    return buf;
}

int run_analyze(const AnalyzeArgs &args) {
    if (args.epsilon <= 0.0) {
        std::cerr << "error: --epsilon must be positive\n";
        return kExitConfig;
    }
    if (args.damping <= 0.0 || args.damping >= 1.0) {
        std::cerr << "error: --damping must lie strictly between 0 and 1\n";
        return kExitConfig;
    }
    const auto unit = time_unit_from_name(args.time_unit);
    if (!unit) {
        std::cerr << "error: --time-unit must be hours, minutes, or seconds\n";
        return kExitConfig;
    }
    bool want_csv = false, want_json = false, want_edgelist = false, want_dot = false;
    for (const std::string &format : args.formats) {
        if (format == "csv") {
            want_csv = true;
        } else if (format == "json") {
            want_json = true;
        } else if (format == "edgelist") {
            want_edgelist = true;
        } else if (format == "dot") {
            want_dot = true;
        } else {
            std::cerr << "error: unknown output format '" << format << "'\n";
            return kExitConfig;
        }
    }

    std::ifstream in(args.posts_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << args.posts_path << "\n";
        return kExitConfig;
    }
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << args.out_dir << "\n";
        return kExitConfig;
    }

    AnalysisReport report;
    report.site = args.site.empty() ? fs::path(args.posts_path).stem().string() : args.site;
    report.config.epsilon = args.epsilon;
    report.config.time_unit = *unit;
    report.config.damping = args.damping;
    report.config.weighted_metrics = args.weighted;
    report.config.undirected = args.undirected;
    report.config.reverse_edges = args.reverse_edges;

    ParsedPosts parsed;
    try {
        parsed = parse_posts(in);
    } catch (const ParseError &error) {
        std::cerr << "parse error: " << error.what() << "\n";
        return kExitParse;
    }
    report.ingest = parsed.stats;

    DeriveResult derived = derive_interactions(parsed.records);
    report.anomalies = derived.anomalies;

    BuildOptions build;
    build.epsilon = args.epsilon;
    build.time_unit = *unit;
    build.reverse_edges = args.reverse_edges;
    QRGraph graph = build_graph(derived.interactions, build);
    graph.set_anomalies(derived.anomalies);
    report.node_count = graph.node_count();
    report.edge_count = graph.edge_count();
    report.interaction_count = derived.interactions.size();

    const RoleClassification roles = classify_roles(derived.interactions);
    report.roles = roles.summary;

    CentralityTable table;
    table.node_ids = graph.node_ids();
    if (graph.node_count() >= 2) {
        CentralityConfig config;
        config.weighted = args.weighted;
        config.undirected = args.undirected;
        config.damping = args.damping;
        config.threads = args.threads;
        table = compute_all_centralities(graph, config);
        report.convergence = table.convergence;
        report.warnings = table.warnings;
        report.stats = metric_stats(table);
        if (graph.node_count() >= 3) {
            try {
                report.correlations = correlation_matrix(table);
            } catch (const std::invalid_argument &) {
                report.warnings.push_back("correlations undefined: all score columns constant");
            }
        }
        if (!table.convergence.pagerank_converged) {
            report.partial = true;
            report.warnings.push_back("pagerank did not converge; report flagged partial");
        }
    }

    const fs::path out_dir(args.out_dir);
    std::vector<std::string> written;
    auto open_out = [&](const char *name) {
        std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error(std::string("cannot write ") + name);
        }
        written.push_back((out_dir / name).string());
        return out;
    };
    try {
        if (want_json) {
            auto out = open_out("report.json");
            out << report_to_json(report).dump(2) << "\n";
        }
        if (want_csv) {
            auto out = open_out("centrality.csv");
            write_centrality_csv(out, table);
        }
        if (want_edgelist) {
            auto out = open_out("edges.tsv");
            write_edges_tsv(out, graph);
        }
        if (want_dot) {
            auto out = open_out("graph.dot");
            write_dot(out, graph);
        }
    } catch (const std::runtime_error &error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitConfig;
    }

    std::cout << "site: " << report.site << "\n"
              << "rows read: " << report.ingest.rows_read << " (questions "
              << report.ingest.questions << ", answers " << report.ingest.answers
              << "; skipped: " << report.ingest.skipped_other_type << " other-type, "
              << report.ingest.skipped_malformed << " malformed, "
              << report.ingest.skipped_missing_owner << " missing-owner)\n"
              << "interactions: " << report.interaction_count << " (dropped: "
              << report.anomalies.orphan_answers << " orphan, "
              << report.anomalies.self_answers << " self-answer, "
              << report.anomalies.negative_response_time << " negative-time)\n"
              << "graph: " << report.node_count << " nodes, " << report.edge_count
              << " edges\n"
              << "roles: " << report.roles.questioners_only << " questioner-only, "
              << report.roles.responders_only << " responder-only, " << report.roles.both
              << " both; QR ratio " << format_ratio(report.roles.qr_ratio) << "\n";
    for (const std::string &warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    for (const std::string &file : written) {
        std::cout << "wrote " << file << "\n";
    }
    return report.partial ? kExitNoConvergence : kExitOk;
}

int run_fetch(const std::string &slug, const std::string &out_dir) {
    try {
        const FetchResult result = fetch_dump(slug, out_dir);
        std::cout << "saved " << result.path.string() << " (" << result.bytes << " bytes)\n";
        return kExitOk;
    } catch (const FetchError &error) {
        std::cerr << "error: " << error.what() << "\n";
        switch (error.kind()) {
        case FetchErrorKind::invalid_slug:
        case FetchErrorKind::io:
            return kExitConfig;
        default:
            return kExitTransfer;
        }
    }
}

int run_compare(const std::vector<std::string> &report_paths, const std::string &csv_path) {
    if (report_paths.size() < 2) {
        std::cerr << "error: compare needs at least 2 report files\n";
        return kExitConfig;
    }
    std::vector<AnalysisReport> reports;
    for (const std::string &path : report_paths) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot read " << path << "\n";
            return kExitConfig;
        }
        try {
            reports.push_back(report_from_json(nlohmann::json::parse(in)));
        } catch (const std::exception &error) {
            std::cerr << "error: " << path << ": " << error.what() << "\n";
            return kExitConfig;
        }
    }

    // One row per platform: counts, role split, ratio, then mean±std per
    // measure in the statistics order.
    const std::string header =
        "platform,questions,nodes,edges,questioners_only,responders_only,both,qr_ratio,"
        "degree,betweenness,closeness,pagerank,eigenvector,harmonic";
    auto row_of = [](const AnalysisReport &r) {
        std::string row = r.site + ',' + std::to_string(r.ingest.questions) + ',' +
                          std::to_string(r.node_count) + ',' + std::to_string(r.edge_count) +
                          ',' + std::to_string(r.roles.questioners_only) + ',' +
                          std::to_string(r.roles.responders_only) + ',' +
                          std::to_string(r.roles.both) + ',';
        if (r.roles.qr_ratio) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", *r.roles.qr_ratio);
            row += buf;
        }
        for (std::size_t i = 0; i < kStatsMeasureOrder.size(); ++i) {
            row += ',';
            if (r.stats) {
                const MeasureStats &m = r.stats->measures[i];
                row += format_sig(m.mean, 6) + "±" +
                       (m.std_dev ? format_sig(*m.std_dev, 6) : std::string("na"));
            }
        }
        return row;
    };

    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) {
        std::cerr << "error: cannot write " << csv_path << "\n";
        return kExitConfig;
    }
    csv << header << "\n";
    std::cout << header << "\n";
    for (const AnalysisReport &r : reports) {
        const std::string row = row_of(r);
        csv << row << "\n";
        std::cout << row << "\n";
    }
    std::cout << "wrote " << csv_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Questioner-responder interaction network analytics for Stack Exchange dumps"};
    app.set_version_flag("--version", std::string("qrnet ") + kVersion);
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App *analyze = app.add_subcommand("analyze", "Run the full pipeline on a Posts XML file");
    analyze->add_option("--posts", analyze_args.posts_path, "Decompressed Posts.xml")->required();
    analyze->add_option("--out", analyze_args.out_dir, "Output directory")->required();
    analyze->add_option("--site", analyze_args.site, "Site label (default: input file stem)");
    analyze->add_option("--epsilon", analyze_args.epsilon,
                        "Edge-weight regularizer epsilon (default 0.01)");
    analyze->add_option("--time-unit", analyze_args.time_unit,
                        "Response-time unit: hours|minutes|seconds");
    analyze->add_option("--damping", analyze_args.damping, "PageRank damping (default 0.85)");
    analyze->add_flag("--weighted", analyze_args.weighted,
                      "Use response-time weights inside the centrality measures");
    analyze->add_flag("--undirected", analyze_args.undirected,
                      "Compute centralities on the undirected projection");
    analyze->add_flag("--reverse-edges", analyze_args.reverse_edges,
                      "Point edges responder -> questioner");
    analyze->add_option("--threads", analyze_args.threads, "Worker threads (0 = all cores)");
    analyze->add_option("--format", analyze_args.formats, "Outputs: csv,json,edgelist,dot")
        ->delimiter(',');

    std::string fetch_slug;
    std::string fetch_out = ".";
    CLI::App *fetch = app.add_subcommand("fetch", "Download a site archive (no decompression)");
    fetch->add_option("slug", fetch_slug, "Site slug, e.g. genai.stackexchange.com")->required();
    fetch->add_option("--out", fetch_out, "Destination directory (default .)");

    std::vector<std::string> compare_paths;
    std::string compare_csv = "compare.csv";
    CLI::App *compare = app.add_subcommand("compare", "Tabulate several report.json files");
    compare->add_option("reports", compare_paths, "report.json files (2 or more)");
    compare->add_option("--csv", compare_csv, "Comparison CSV path (default compare.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    if (analyze->parsed()) {
        return run_analyze(analyze_args);
    }
    if (fetch->parsed()) {
        return run_fetch(fetch_slug, fetch_out);
    }
    return run_compare(compare_paths, compare_csv);
}
