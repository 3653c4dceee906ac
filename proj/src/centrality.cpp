#include "qrnet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "qrnet/parallel.hpp"

namespace qrnet {

namespace {

// Source ranges are partitioned into this many blocks regardless of thread
// count; per-block float partials merged in block order keep every result
// bit-identical at any parallelism level.
constexpr std::size_t kBlockCount = 64;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-source shortest-path expansion, unweighted (BFS). `order` doubles as
// the queue; on return it holds nodes in settle order.
struct BfsScratch {
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<NodeIndex> order;

    explicit BfsScratch(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) {
        order.reserve(n);
    }

    void run(const QRGraph &g, NodeIndex source) {
        order.clear();
        dist[source] = 0;
        sigma[source] = 1.0;
        order.push_back(source);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const NodeIndex u = order[head];
            const std::int32_t du = dist[u];
            for (const NodeIndex v : g.out_neighbors(u)) {
                if (dist[v] < 0) {
                    dist[v] = du + 1;
                    sigma[v] = sigma[u];
                    order.push_back(v);
                } else if (dist[v] == du + 1) {
                    sigma[v] += sigma[u];
                }
            }
        }
    }

    void reset() {
        for (const NodeIndex u : order) {
            dist[u] = -1;
            sigma[u] = 0.0;
            delta[u] = 0.0;
        }
    }
};

// Weighted counterpart: Dijkstra over edge lengths 1/weight. Ties in the
// heap break on node index, so settle order is deterministic.
struct DijkstraScratch {
    std::vector<double> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<bool> settled;
    std::vector<NodeIndex> order;
    using HeapItem = std::pair<double, NodeIndex>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;

    explicit DijkstraScratch(std::size_t n)
        : dist(n, kInf), sigma(n, 0.0), delta(n, 0.0), settled(n, false) {
        order.reserve(n);
    }

    void run(const QRGraph &g, NodeIndex source) {
        order.clear();
        dist[source] = 0.0;
        sigma[source] = 1.0;
        heap.emplace(0.0, source);
        while (!heap.empty()) {
            const auto [d, u] = heap.top();
            heap.pop();
            if (settled[u] || d > dist[u]) {
                continue;
            }
            settled[u] = true;
            order.push_back(u);
            const auto neighbors = g.out_neighbors(u);
            const auto weights = g.out_weights(u);
            for (std::size_t i = 0; i < neighbors.size(); ++i) {
                const NodeIndex v = neighbors[i];
                const double nd = d + 1.0 / weights[i];
                if (nd < dist[v]) {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    heap.emplace(nd, v);
                } else if (nd == dist[v]) {
                    sigma[v] += sigma[u];
                }
            }
        }
    }

    void reset() {
        for (const NodeIndex u : order) {
            dist[u] = kInf;
            sigma[u] = 0.0;
            delta[u] = 0.0;
            settled[u] = false;
        }
    }
};

} // namespace

std::vector<double> degree_centrality(const QRGraph &g, bool count_each_neighbor_once) {
    const NodeIndex n = g.node_count();
    if (n < 2) {
        throw std::invalid_argument("degree centrality needs at least 2 nodes");
    }
    const double denom = static_cast<double>(n) - 1.0;
    std::vector<double> scores(n);
    for (NodeIndex v = 0; v < n; ++v) {
        const double connections =
            count_each_neighbor_once
                ? static_cast<double>(g.out_degree(v))
                : static_cast<double>(g.out_degree(v)) + static_cast<double>(g.in_degree(v));
        scores[v] = connections / denom;
    }
    return scores;
}

std::vector<double> betweenness_centrality(const QRGraph &g, const KernelOptions &options) {
    const NodeIndex n = g.node_count();
    std::vector<double> scores(n, 0.0);
    if (n < 3) {
        return scores;
    }

    std::vector<std::vector<double>> partials(std::min<std::size_t>(kBlockCount, n));

    parallel_blocks(n, kBlockCount, options.threads,
                    [&](std::size_t block, std::size_t begin, std::size_t end) {
                        std::vector<double> &acc = partials[block];
                        acc.assign(n, 0.0);
                        if (options.weighted) {
                            DijkstraScratch scratch(n);
                            for (std::size_t s = begin; s < end; ++s) {
                                const auto source = static_cast<NodeIndex>(s);
                                scratch.run(g, source);
                                for (std::size_t i = scratch.order.size(); i-- > 1;) {
                                    const NodeIndex w = scratch.order[i];
                                    const auto in = g.in_neighbors(w);
                                    const auto in_w = g.in_weights(w);
                                    const double coeff = (1.0 + scratch.delta[w]) / scratch.sigma[w];
                                    for (std::size_t e = 0; e < in.size(); ++e) {
                                        const NodeIndex u = in[e];
                                        if (scratch.settled[u] &&
                                            scratch.dist[u] + 1.0 / in_w[e] == scratch.dist[w]) {
                                            scratch.delta[u] += scratch.sigma[u] * coeff;
                                        }
                                    }
                                    acc[w] += scratch.delta[w];
                                }
                                scratch.reset();
                            }
                        } else {
                            BfsScratch scratch(n);
                            for (std::size_t s = begin; s < end; ++s) {
                                const auto source = static_cast<NodeIndex>(s);
                                scratch.run(g, source);
                                for (std::size_t i = scratch.order.size(); i-- > 1;) {
                                    const NodeIndex w = scratch.order[i];
                                    const double coeff = (1.0 + scratch.delta[w]) / scratch.sigma[w];
                                    const std::int32_t dw = scratch.dist[w];
                                    for (const NodeIndex u : g.in_neighbors(w)) {
                                        if (scratch.dist[u] == dw - 1) {
                                            scratch.delta[u] += scratch.sigma[u] * coeff;
                                        }
                                    }
                                    acc[w] += scratch.delta[w];
                                }
                                scratch.reset();
                            }
                        }
                    });

    for (const std::vector<double> &acc : partials) {
        if (acc.empty()) {
            continue;
        }
        for (NodeIndex v = 0; v < n; ++v) {
            scores[v] += acc[v];
        }
    }
    const double norm =
        (static_cast<double>(n) - 1.0) * (static_cast<double>(n) - 2.0);
    for (double &s : scores) {
        s /= norm;
    }
    return scores;
}

ClosenessHarmonicScores closeness_and_harmonic(const QRGraph &g, const KernelOptions &options) {
    const NodeIndex n = g.node_count();
    ClosenessHarmonicScores result;
    result.closeness.assign(n, 0.0);
    result.harmonic.assign(n, 0.0);
    if (n == 0) {
        return result;
    }

    // Incoming accumulators per target: distance sum, reachable-source count,
    // reciprocal-distance sum. Filled from out-BFS sweeps over all sources.
    struct Partial {
        std::vector<double> dist_sum;
        std::vector<double> reach;
        std::vector<double> reciprocal;
    };
    std::vector<Partial> partials(std::min<std::size_t>(kBlockCount, n));

    parallel_blocks(
        n, kBlockCount, options.threads,
        [&](std::size_t block, std::size_t begin, std::size_t end) {
            Partial &acc = partials[block];
            acc.dist_sum.assign(n, 0.0);
            acc.reach.assign(n, 0.0);
            acc.reciprocal.assign(n, 0.0);
            if (options.weighted) {
                DijkstraScratch scratch(n);
                for (std::size_t s = begin; s < end; ++s) {
                    scratch.run(g, static_cast<NodeIndex>(s));
                    for (std::size_t i = 1; i < scratch.order.size(); ++i) {
                        const NodeIndex v = scratch.order[i];
                        const double d = scratch.dist[v];
                        acc.dist_sum[v] += d;
                        acc.reach[v] += 1.0;
                        acc.reciprocal[v] += 1.0 / d;
                    }
                    scratch.reset();
                }
            } else {
                BfsScratch scratch(n);
                for (std::size_t s = begin; s < end; ++s) {
                    scratch.run(g, static_cast<NodeIndex>(s));
                    for (std::size_t i = 1; i < scratch.order.size(); ++i) {
                        const NodeIndex v = scratch.order[i];
                        const double d = scratch.dist[v];
                        acc.dist_sum[v] += d;
                        acc.reach[v] += 1.0;
                        acc.reciprocal[v] += 1.0 / d;
                    }
                    scratch.reset();
                }
            }
        });

    std::vector<double> dist_sum(n, 0.0);
    std::vector<double> reach(n, 0.0);
    for (const Partial &acc : partials) {
        if (acc.dist_sum.empty()) {
            continue;
        }
        for (NodeIndex v = 0; v < n; ++v) {
            dist_sum[v] += acc.dist_sum[v];
            reach[v] += acc.reach[v];
            result.harmonic[v] += acc.reciprocal[v];
        }
    }
    if (n >= 2) {
        const double scale = static_cast<double>(n) - 1.0;
        for (NodeIndex v = 0; v < n; ++v) {
            if (reach[v] > 0.0) {
                result.closeness[v] = (reach[v] / dist_sum[v]) * (reach[v] / scale);
            }
        }
    }
    return result;
}

std::vector<double> closeness_centrality(const QRGraph &g, const KernelOptions &options) {
    return closeness_and_harmonic(g, options).closeness;
}

std::vector<double> harmonic_centrality(const QRGraph &g, const KernelOptions &options) {
    return closeness_and_harmonic(g, options).harmonic;
}

PageRankResult pagerank(const QRGraph &g, const PageRankOptions &options) {
    if (options.damping <= 0.0 || options.damping >= 1.0) {
        throw std::invalid_argument("damping must lie strictly between 0 and 1");
    }
    const NodeIndex n = g.node_count();
    PageRankResult result;
    if (n == 0) {
        result.converged = true;
        return result;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    const double d = options.damping;

    // Transition factor per in-edge: rank share a source passes along this
    // edge. Precomputed once; in-CSR order keeps per-target sums fixed.
    std::vector<NodeIndex> dangling;
    for (NodeIndex u = 0; u < n; ++u) {
        if (g.out_degree(u) == 0) {
            dangling.push_back(u);
        }
    }
    std::vector<double> out_share(n, 0.0);
    for (NodeIndex u = 0; u < n; ++u) {
        if (g.out_degree(u) > 0) {
            out_share[u] = options.weighted ? 1.0 / g.out_weight_sum(u)
                                            : 1.0 / static_cast<double>(g.out_degree(u));
        }
    }

    std::vector<double> x(n, inv_n);
    std::vector<double> next(n, 0.0);
    result.residual = kInf;

    while (result.iterations < options.max_iterations) {
        double dangling_mass = 0.0;
        for (const NodeIndex u : dangling) {
            dangling_mass += x[u];
        }
        const double base = (1.0 - d) * inv_n + d * dangling_mass * inv_n;

        parallel_blocks(n, kBlockCount, options.threads,
                        [&](std::size_t, std::size_t begin, std::size_t end) {
                            for (std::size_t vi = begin; vi < end; ++vi) {
                                const auto v = static_cast<NodeIndex>(vi);
                                double rank = 0.0;
                                const auto in = g.in_neighbors(v);
                                const auto in_w = g.in_weights(v);
                                for (std::size_t e = 0; e < in.size(); ++e) {
                                    const NodeIndex u = in[e];
                                    const double share =
                                        options.weighted ? in_w[e] * out_share[u] : out_share[u];
                                    rank += x[u] * share;
                                }
                                next[v] = base + d * rank;
                            }
                        });

        double residual = 0.0;
        for (NodeIndex v = 0; v < n; ++v) {
            residual += std::abs(next[v] - x[v]);
        }
        x.swap(next);
        ++result.iterations;
        result.residual = residual;
        if (residual < options.tolerance) {
            result.converged = true;
            break;
        }
    }

    double total = 0.0;
    for (const double v : x) {
        total += v;
    }
    for (double &v : x) {
        v /= total;
    }
    result.scores = std::move(x);
    return result;
}

EigenvectorResult eigenvector_centrality(const QRGraph &g, const EigenvectorOptions &options) {
    const NodeIndex n = g.node_count();
    EigenvectorResult result;
    if (n == 0) {
        result.converged = true;
        return result;
    }

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n, 0.0);

    while (result.iterations < options.max_iterations) {
        parallel_blocks(n, kBlockCount, options.threads,
                        [&](std::size_t, std::size_t begin, std::size_t end) {
                            for (std::size_t vi = begin; vi < end; ++vi) {
                                const auto v = static_cast<NodeIndex>(vi);
                                double sum = 0.0;
                                const auto in = g.in_neighbors(v);
                                const auto in_w = g.in_weights(v);
                                for (std::size_t e = 0; e < in.size(); ++e) {
                                    sum += options.weighted ? x[in[e]] * in_w[e] : x[in[e]];
                                }
                                next[v] = sum;
                            }
                        });
        ++result.iterations;

        double norm_sq = 0.0;
        for (const double v : next) {
            norm_sq += v * v;
        }
        const double norm = std::sqrt(norm_sq);
        if (!(norm > 1e-300)) {
            // Nilpotent reachability: the iterate collapsed to zero.
            result.degenerate = true;
            result.scores.assign(n, 0.0);
            return result;
        }
        double delta = 0.0;
        for (NodeIndex v = 0; v < n; ++v) {
            next[v] /= norm;
            delta = std::max(delta, std::abs(next[v] - x[v]));
        }
        x.swap(next);
        if (delta < options.tolerance) {
            result.converged = true;
            result.scores = std::move(x);
            return result;
        }
    }

    // Out of iterations (periodic dominant structure); report the degenerate
    // marker instead of a half-converged vector.
    result.degenerate = true;
    result.scores.assign(n, 0.0);
    return result;
}

std::optional<std::uint32_t> HopDistances::distance(NodeIndex from_node, NodeIndex to_node) const {
    const auto &row = from[from_node];
    const auto it = std::lower_bound(
        row.begin(), row.end(), to_node,
        [](const std::pair<NodeIndex, std::uint32_t> &entry, NodeIndex target) {
            return entry.first < target;
        });
    if (it == row.end() || it->first != to_node) {
        return std::nullopt;
    }
    return it->second;
}

HopDistances all_pairs_hop_distances(const QRGraph &g, unsigned threads) {
    const NodeIndex n = g.node_count();
    HopDistances result;
    result.from.resize(n);
    if (n == 0) {
        return result;
    }
    parallel_blocks(n, kBlockCount, threads,
                    [&](std::size_t, std::size_t begin, std::size_t end) {
                        BfsScratch scratch(n);
                        for (std::size_t s = begin; s < end; ++s) {
                            scratch.run(g, static_cast<NodeIndex>(s));
                            auto &row = result.from[s];
                            row.reserve(scratch.order.size());
                            for (const NodeIndex v : scratch.order) {
                                row.emplace_back(v, static_cast<std::uint32_t>(scratch.dist[v]));
                            }
                            std::sort(row.begin(), row.end());
                            scratch.reset();
                        }
                    });
    return result;
}

CentralityTable compute_all_centralities(const QRGraph &g, const CentralityConfig &config) {
    if (g.node_count() < 2) {
        throw std::invalid_argument("centrality suite needs at least 2 nodes");
    }
    const QRGraph projected = config.undirected ? g.symmetrized() : QRGraph();
    const QRGraph &graph = config.undirected ? projected : g;

    const KernelOptions kernel{config.weighted, config.threads};

    CentralityTable table;
    table.node_ids = graph.node_ids();
    table.degree = degree_centrality(graph, config.undirected);
    table.betweenness = betweenness_centrality(graph, kernel);
    if (graph.node_count() < 3) {
        table.warnings.push_back("betweenness undefined for fewer than 3 nodes; scores are zero");
    }
    auto incoming = closeness_and_harmonic(graph, kernel);
    table.closeness = std::move(incoming.closeness);
    table.harmonic = std::move(incoming.harmonic);

    PageRankOptions pr;
    pr.damping = config.damping;
    pr.tolerance = config.tolerance;
    pr.max_iterations = config.max_iterations;
    pr.weighted = config.weighted;
    pr.threads = config.threads;
    auto pagerank_result = pagerank(graph, pr);
    table.pagerank = std::move(pagerank_result.scores);
    table.convergence.pagerank_iterations = pagerank_result.iterations;
    table.convergence.pagerank_converged = pagerank_result.converged;
    table.convergence.pagerank_residual = pagerank_result.residual;

    EigenvectorOptions ev;
    ev.tolerance = config.tolerance;
    ev.max_iterations = config.max_iterations;
    ev.weighted = config.weighted;
    ev.threads = config.threads;
    auto eigen_result = eigenvector_centrality(graph, ev);
    table.eigenvector = std::move(eigen_result.scores);
    table.convergence.eigenvector_iterations = eigen_result.iterations;
    table.convergence.eigenvector_converged = eigen_result.converged;
    table.convergence.eigenvector_degenerate = eigen_result.degenerate;
    if (eigen_result.degenerate) {
        table.warnings.push_back(
            "eigenvector centrality degenerate (power iteration collapsed or did not converge); "
            "scores are zero");
    }
    return table;
}

} // namespace qrnet
