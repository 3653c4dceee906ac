#include "qrnet/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace qrnet {

namespace {

NodeIndex index_in(const std::vector<std::int64_t> &sorted_ids, std::int64_t id) {
    const auto it = std::lower_bound(sorted_ids.begin(), sorted_ids.end(), id);
    return static_cast<NodeIndex>(it - sorted_ids.begin());
}

} // namespace

std::optional<NodeIndex> QRGraph::index_of(std::int64_t user_id) const {
    const auto it = std::lower_bound(node_ids_.begin(), node_ids_.end(), user_id);
    if (it == node_ids_.end() || *it != user_id) {
        return std::nullopt;
    }
    return static_cast<NodeIndex>(it - node_ids_.begin());
}

double QRGraph::out_weight_sum(NodeIndex v) const {
    double sum = 0.0;
    for (const double w : out_weights(v)) {
        sum += w;
    }
    return sum;
}

std::optional<QRGraph::Edge> QRGraph::find_edge(std::int64_t src, std::int64_t dst) const {
    const auto s = index_of(src);
    const auto d = index_of(dst);
    if (!s || !d) {
        return std::nullopt;
    }
    const auto neighbors = out_neighbors(*s);
    const auto it = std::lower_bound(neighbors.begin(), neighbors.end(), *d);
    if (it == neighbors.end() || *it != *d) {
        return std::nullopt;
    }
    const std::size_t slot = out_offsets_[*s] + static_cast<std::size_t>(it - neighbors.begin());
    return Edge{src, dst, out_weights_[slot], out_counts_[slot]};
}

std::vector<QRGraph::Edge> QRGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count());
    for (NodeIndex v = 0; v < node_count(); ++v) {
        for (std::size_t slot = out_offsets_[v]; slot < out_offsets_[v + 1]; ++slot) {
            result.push_back(Edge{id_of(v), id_of(out_targets_[slot]), out_weights_[slot],
                                  out_counts_[slot]});
        }
    }
    return result;
}

std::uint64_t QRGraph::total_interactions() const {
    std::uint64_t total = 0;
    for (const std::uint64_t c : out_counts_) {
        total += c;
    }
    return total;
}

// `edges` must be sorted by (src, dst), unique, with endpoints present in the
// sorted unique `nodes` list.
QRGraph QRGraph::from_sorted_unique_edges(std::vector<std::int64_t> nodes,
                                          std::vector<Edge> edges, double epsilon) {
    QRGraph g;
    g.node_ids_ = std::move(nodes);
    g.epsilon_ = epsilon;

    const std::size_t n = g.node_ids_.size();
    const std::size_t m = edges.size();
    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    g.out_targets_.resize(m);
    g.out_weights_.resize(m);
    g.out_counts_.resize(m);
    g.in_sources_.resize(m);
    g.in_weights_.resize(m);

    std::vector<NodeIndex> src_idx(m);
    std::vector<NodeIndex> dst_idx(m);
    for (std::size_t e = 0; e < m; ++e) {
        src_idx[e] = index_in(g.node_ids_, edges[e].src);
        dst_idx[e] = index_in(g.node_ids_, edges[e].dst);
        ++g.out_offsets_[src_idx[e] + 1];
        ++g.in_offsets_[dst_idx[e] + 1];
    }
    for (std::size_t v = 0; v < n; ++v) {
        g.out_offsets_[v + 1] += g.out_offsets_[v];
        g.in_offsets_[v + 1] += g.in_offsets_[v];
    }

    // Edges arrive sorted by (src, dst), so out-lists fill in order.
    {
        std::vector<std::size_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
        for (std::size_t e = 0; e < m; ++e) {
            const std::size_t slot = cursor[src_idx[e]]++;
            g.out_targets_[slot] = dst_idx[e];
            g.out_weights_[slot] = edges[e].weight;
            g.out_counts_[slot] = edges[e].count;
        }
    }
    // In-lists: a stable pass over (src, dst)-sorted edges leaves each
    // in-neighbor list sorted by source index.
    {
        std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
        for (std::size_t e = 0; e < m; ++e) {
            const std::size_t slot = cursor[dst_idx[e]]++;
            g.in_sources_[slot] = src_idx[e];
            g.in_weights_[slot] = edges[e].weight;
        }
    }
    return g;
}

QRGraph QRGraph::from_edges(std::vector<std::int64_t> nodes, std::vector<Edge> edges,
                            double epsilon) {
    if (epsilon <= 0.0) {
        throw std::invalid_argument("epsilon must be positive");
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    for (const Edge &edge : edges) {
        if (edge.src == edge.dst) {
            throw std::invalid_argument("self-loop edges are not allowed");
        }
        if (!(edge.weight > 0.0)) {
            throw std::invalid_argument("edge weight must be positive");
        }
        if (edge.count == 0) {
            throw std::invalid_argument("edge count must be at least 1");
        }
        if (!std::binary_search(nodes.begin(), nodes.end(), edge.src) ||
            !std::binary_search(nodes.begin(), nodes.end(), edge.dst)) {
            throw std::invalid_argument("edge endpoint not in node list");
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
        if (a.src != b.src) {
            return a.src < b.src;
        }
        if (a.dst != b.dst) {
            return a.dst < b.dst;
        }
        return a.weight < b.weight;
    });
    std::vector<Edge> merged;
    merged.reserve(edges.size());
    for (const Edge &edge : edges) {
        if (!merged.empty() && merged.back().src == edge.src && merged.back().dst == edge.dst) {
            merged.back().weight += edge.weight;
            merged.back().count += edge.count;
        } else {
            merged.push_back(edge);
        }
    }
    return from_sorted_unique_edges(std::move(nodes), std::move(merged), epsilon);
}

QRGraph QRGraph::symmetrized() const {
    std::vector<Edge> mirrored;
    mirrored.reserve(edge_count() * 2);
    for (const Edge &edge : edges()) {
        mirrored.push_back(edge);
        mirrored.push_back(Edge{edge.dst, edge.src, edge.weight, edge.count});
    }
    QRGraph g = from_edges(node_ids_, std::move(mirrored), epsilon_);
    g.set_anomalies(anomalies_);
    return g;
}

QRGraph build_graph(std::span<const Interaction> interactions, const BuildOptions &options) {
    if (options.epsilon <= 0.0) {
        throw std::invalid_argument("epsilon must be positive");
    }
    const double unit_scale = time_unit_per_hour(options.time_unit);

    struct Item {
        std::int64_t src;
        std::int64_t dst;
        double response_time_hours;
        std::int64_t question_id;
        std::int64_t answer_id;
    };
    std::vector<Item> items;
    items.reserve(interactions.size());
    for (const Interaction &interaction : interactions) {
        if (interaction.questioner == interaction.responder) {
            throw std::invalid_argument("self-interactions cannot become graph edges");
        }
        Item item{interaction.questioner, interaction.responder,
                  interaction.response_time_hours, interaction.question_id,
                  interaction.answer_id};
        if (options.reverse_edges) {
            std::swap(item.src, item.dst);
        }
        items.push_back(item);
    }
    // Canonical order before summation makes the result independent of the
    // input permutation, bit for bit.
    std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) {
        if (a.src != b.src) {
            return a.src < b.src;
        }
        if (a.dst != b.dst) {
            return a.dst < b.dst;
        }
        if (a.response_time_hours != b.response_time_hours) {
            return a.response_time_hours < b.response_time_hours;
        }
        if (a.question_id != b.question_id) {
            return a.question_id < b.question_id;
        }
        return a.answer_id < b.answer_id;
    });

    std::vector<std::int64_t> nodes;
    nodes.reserve(items.size() * 2);
    std::vector<QRGraph::Edge> edges;
    for (const Item &item : items) {
        nodes.push_back(item.src);
        nodes.push_back(item.dst);
        const double w = edge_weight(item.response_time_hours * unit_scale, options.epsilon);
        if (!edges.empty() && edges.back().src == item.src && edges.back().dst == item.dst) {
            edges.back().weight += w;
            edges.back().count += 1;
        } else {
            edges.push_back(QRGraph::Edge{item.src, item.dst, w, 1});
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return QRGraph::from_sorted_unique_edges(std::move(nodes), std::move(edges), options.epsilon);
}

} // namespace qrnet
