#ifndef QRNET_GRAPH_HPP_
#define QRNET_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qrnet/interactions.hpp"

namespace qrnet {

using NodeIndex = std::uint32_t;

struct BuildOptions {
    double epsilon = 0.01;
    TimeUnit time_unit = TimeUnit::hours;
    // By default edges run questioner -> responder; this flips them.
    bool reverse_edges = false;
};

/// Directed weighted questioner-responder graph. Nodes are user ids; each
/// ordered user pair with at least one interaction holds one edge whose
/// weight is the sum of 1/(r + epsilon) over its interactions and whose count
/// is the number of interactions merged into it.
///
/// Node ids are stored in ascending order and adjacency is kept in CSR form
/// both ways, with neighbor lists sorted by index. Construction is fully
/// deterministic: the same interaction multiset yields bit-identical graphs
/// regardless of input order. Instances are immutable after construction and
/// safe to share across threads.
class QRGraph {
public:
    struct Edge {
        std::int64_t src = 0;
        std::int64_t dst = 0;
        double weight = 0.0;
        std::uint64_t count = 0;
    };

    QRGraph() = default;

    /// Builds a graph from explicit node and edge lists (synthetic graphs,
    /// tests, imports). Node ids are deduplicated; edges between the same
    /// ordered pair are merged by summing weight and count. Self-loops,
    /// non-positive weights, zero counts, and endpoints missing from `nodes`
    /// are rejected.
    static QRGraph from_edges(std::vector<std::int64_t> nodes, std::vector<Edge> edges,
                              double epsilon = 0.01);

    NodeIndex node_count() const { return static_cast<NodeIndex>(node_ids_.size()); }
    std::size_t edge_count() const { return out_targets_.size(); }
    double epsilon() const { return epsilon_; }

    /// Ascending user ids; index i in every score vector refers to node_ids()[i].
    const std::vector<std::int64_t> &node_ids() const { return node_ids_; }

    std::int64_t id_of(NodeIndex index) const { return node_ids_[index]; }
    std::optional<NodeIndex> index_of(std::int64_t user_id) const;

    std::span<const NodeIndex> out_neighbors(NodeIndex v) const {
        return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
    }
    std::span<const NodeIndex> in_neighbors(NodeIndex v) const {
        return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
    }
    std::span<const double> out_weights(NodeIndex v) const {
        return {out_weights_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
    }
    std::span<const double> in_weights(NodeIndex v) const {
        return {in_weights_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
    }
    std::span<const std::uint64_t> out_counts(NodeIndex v) const {
        return {out_counts_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
    }

    NodeIndex out_degree(NodeIndex v) const {
        return static_cast<NodeIndex>(out_offsets_[v + 1] - out_offsets_[v]);
    }
    NodeIndex in_degree(NodeIndex v) const {
        return static_cast<NodeIndex>(in_offsets_[v + 1] - in_offsets_[v]);
    }

    /// Sum of out-edge weights per node (transition normalizers for the
    /// weighted random-walk measures).
    double out_weight_sum(NodeIndex v) const;

    std::optional<Edge> find_edge(std::int64_t src, std::int64_t dst) const;

    /// Edges in ascending (src, dst) id order.
    std::vector<Edge> edges() const;

    std::uint64_t total_interactions() const;

    const AnomalyCounts &anomalies() const { return anomalies_; }
    void set_anomalies(const AnomalyCounts &counts) { anomalies_ = counts; }

    /// Undirected projection: every edge is mirrored, opposite-direction
    /// pairs merge by summing weight and count.
    QRGraph symmetrized() const;

private:
    static QRGraph from_sorted_unique_edges(std::vector<std::int64_t> nodes,
                                            std::vector<Edge> edges, double epsilon);

    std::vector<std::int64_t> node_ids_; // ascending
    double epsilon_ = 0.01;
    AnomalyCounts anomalies_;

    std::vector<std::size_t> out_offsets_;
    std::vector<NodeIndex> out_targets_;
    std::vector<double> out_weights_;
    std::vector<std::uint64_t> out_counts_;

    std::vector<std::size_t> in_offsets_;
    std::vector<NodeIndex> in_sources_;
    std::vector<double> in_weights_;

    friend QRGraph build_graph(std::span<const Interaction>, const BuildOptions &);
};

/// Aggregates interactions into the directed weighted graph. Nodes are all
/// users appearing as questioner or responder; each ordered (questioner,
/// responder) pair becomes one edge. Deterministic under permutation of the
/// input: interactions are sorted before weights are summed.
QRGraph build_graph(std::span<const Interaction> interactions, const BuildOptions &options = {});

} // namespace qrnet

#endif // QRNET_GRAPH_HPP_
