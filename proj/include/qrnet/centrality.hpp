#ifndef QRNET_CENTRALITY_HPP_
#define QRNET_CENTRALITY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrnet/graph.hpp"

namespace qrnet {

// All kernels run on the directed structure and, unless stated otherwise,
// ignore edge weights (each aggregated edge counts once). Results are
// bit-deterministic across thread counts: floating-point partials are merged
// in a fixed block order and global reductions run sequentially.

struct KernelOptions {
    // Path-based measures switch from hop counts to 1/weight edge lengths;
    // walk-based measures use weight-proportional transitions.
    bool weighted = false;
    unsigned threads = 0; // 0 = hardware concurrency
};

/// (in_degree + out_degree) / (n - 1) over aggregated edges. When
/// `count_each_neighbor_once` is set (undirected projections, where every
/// neighbor appears on both sides) only the out-side is counted. Throws for
/// graphs with fewer than two nodes.
std::vector<double> degree_centrality(const QRGraph &g, bool count_each_neighbor_once = false);

/// Shortest-path betweenness via source-parallel dependency accumulation,
/// normalized by (n-1)(n-2). Graphs with fewer than three nodes score zero
/// everywhere.
std::vector<double> betweenness_centrality(const QRGraph &g, const KernelOptions &options = {});

/// Reachability-scaled incoming closeness: with R(v) the set of nodes that
/// reach v, k = |R(v)| and S the summed distances, score(v) = (k/S) * (k/(n-1)),
/// zero when nothing reaches v. Finite on disconnected graphs.
std::vector<double> closeness_centrality(const QRGraph &g, const KernelOptions &options = {});

/// Sum of reciprocal incoming distances, unnormalized.
std::vector<double> harmonic_centrality(const QRGraph &g, const KernelOptions &options = {});

struct ClosenessHarmonicScores {
    std::vector<double> closeness;
    std::vector<double> harmonic;
};

/// Both incoming-distance measures from one sweep.
ClosenessHarmonicScores closeness_and_harmonic(const QRGraph &g, const KernelOptions &options = {});

struct PageRankOptions {
    double damping = 0.85;
    double tolerance = 1e-9; // L1 change between sweeps
    std::uint32_t max_iterations = 1000;
    bool weighted = false;
    unsigned threads = 0;
};

struct PageRankResult {
    std::vector<double> scores; // sums to 1
    std::uint32_t iterations = 0;
    bool converged = false;
    double residual = 0.0; // L1 change at the last sweep
};

/// Power iteration with uniform teleportation (1-d)/n and dangling mass
/// redistributed uniformly. Unweighted transitions spread rank equally over
/// out-edges; weighted ones proportionally to edge weight.
PageRankResult pagerank(const QRGraph &g, const PageRankOptions &options = {});

struct EigenvectorOptions {
    double tolerance = 1e-9; // L-infinity change between normalized sweeps
    std::uint32_t max_iterations = 1000;
    bool weighted = false;
    unsigned threads = 0;
};

struct EigenvectorResult {
    std::vector<double> scores; // unit L2 norm, or all-zero when degenerate
    std::uint32_t iterations = 0;
    bool converged = false;
    // Iteration collapsed to zero (nilpotent reachability, e.g. a DAG) or ran
    // out of iterations; scores are reported all-zero rather than fabricated.
    bool degenerate = false;
};

/// In-edge eigenvector centrality: power iteration for x(v) = sum of x(u)
/// over u -> v, L2-normalized every sweep, started from the uniform vector.
EigenvectorResult eigenvector_centrality(const QRGraph &g, const EigenvectorOptions &options = {});

/// Sparse all-pairs hop distances (BFS from every node over out-edges).
/// Intended for small graphs; storage is O(reachable pairs).
struct HopDistances {
    // Per source index: (target index, hops) sorted by target, including
    // (source, 0).
    std::vector<std::vector<std::pair<NodeIndex, std::uint32_t>>> from;

    std::optional<std::uint32_t> distance(NodeIndex from_node, NodeIndex to_node) const;
};

HopDistances all_pairs_hop_distances(const QRGraph &g, unsigned threads = 0);

struct ConvergenceInfo {
    std::uint32_t pagerank_iterations = 0;
    bool pagerank_converged = false;
    double pagerank_residual = 0.0;
    std::uint32_t eigenvector_iterations = 0;
    bool eigenvector_converged = false;
    bool eigenvector_degenerate = false;
};

/// Per-node scores for the six measures, node order = QRGraph::node_ids().
struct CentralityTable {
    std::vector<std::int64_t> node_ids;
    std::vector<double> degree;
    std::vector<double> betweenness;
    std::vector<double> closeness;
    std::vector<double> pagerank;
    std::vector<double> eigenvector;
    std::vector<double> harmonic;
    ConvergenceInfo convergence;
    std::vector<std::string> warnings;
};

struct CentralityConfig {
    bool weighted = false;
    bool undirected = false; // compute on the symmetrized projection
    double damping = 0.85;
    double tolerance = 1e-9;
    std::uint32_t max_iterations = 1000;
    unsigned threads = 0;
};

/// Runs all six measures. Requires at least two nodes.
CentralityTable compute_all_centralities(const QRGraph &g, const CentralityConfig &config = {});

} // namespace qrnet

#endif // QRNET_CENTRALITY_HPP_
