#include "qrnet/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qrnet {

std::optional<double> qr_ratio(std::uint64_t questioners_only, std::uint64_t responders_only) {
    if (responders_only == 0) {
        return std::nullopt;
    }
    return static_cast<double>(questioners_only) / static_cast<double>(responders_only);
}

RoleClassification classify_roles(std::span<const Interaction> interactions) {
    enum : std::uint8_t { asked = 1, answered = 2 };
    std::map<std::int64_t, std::uint8_t> activity; // ordered: roles come out sorted
    for (const Interaction &interaction : interactions) {
        activity[interaction.questioner] |= asked;
        activity[interaction.responder] |= answered;
    }

    RoleClassification result;
    result.roles.reserve(activity.size());
    for (const auto &[user, mask] : activity) {
        UserRole role = UserRole::both;
        if (mask == asked) {
            role = UserRole::questioner_only;
            ++result.summary.questioners_only;
        } else if (mask == answered) {
            role = UserRole::responder_only;
            ++result.summary.responders_only;
        } else {
            ++result.summary.both;
        }
        result.roles.emplace_back(user, role);
    }
    result.summary.qr_ratio =
        qr_ratio(result.summary.questioners_only, result.summary.responders_only);
    return result;
}

double mean_of(std::span<const double> values) {
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

std::optional<double> std_dev_of(std::span<const double> values, bool population) {
    const std::size_t n = values.size();
    if (n < 2 && !population) {
        return std::nullopt;
    }
    if (n == 0) {
        return std::nullopt;
    }
    const double mu = mean_of(values);
    double ss = 0.0;
    for (const double v : values) {
        const double d = v - mu;
        ss += d * d;
    }
    const double denom = population ? static_cast<double>(n) : static_cast<double>(n - 1);
    return std::sqrt(ss / denom);
}

namespace {

const std::vector<double> &measure_column(const CentralityTable &table, std::string_view name) {
    if (name == "degree") {
        return table.degree;
    }
    if (name == "betweenness") {
        return table.betweenness;
    }
    if (name == "closeness") {
        return table.closeness;
    }
    if (name == "pagerank") {
        return table.pagerank;
    }
    if (name == "eigenvector") {
        return table.eigenvector;
    }
    if (name == "harmonic") {
        return table.harmonic;
    }
    throw std::invalid_argument("unknown centrality measure");
}

} // namespace

MetricStats metric_stats(const CentralityTable &table, bool population_std) {
    if (table.node_ids.empty()) {
        throw std::invalid_argument("metric stats need a non-empty table");
    }
    MetricStats stats;
    for (std::size_t i = 0; i < kStatsMeasureOrder.size(); ++i) {
        const auto &column = measure_column(table, kStatsMeasureOrder[i]);
        stats.measures[i].mean = mean_of(column);
        stats.measures[i].std_dev = std_dev_of(column, population_std);
    }
    return stats;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) {
        throw std::invalid_argument("pearson needs two equal-length vectors of size >= 2");
    }
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        return std::nullopt;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const CentralityTable &table) {
    if (table.node_ids.size() < 3) {
        throw std::invalid_argument("correlation matrix needs at least 3 nodes");
    }

    std::array<const std::vector<double> *, 6> columns{};
    bool any_variance = false;
    for (std::size_t i = 0; i < kCorrelationMeasureOrder.size(); ++i) {
        columns[i] = &measure_column(table, kCorrelationMeasureOrder[i]);
        const auto sd = std_dev_of(*columns[i]);
        if (sd && *sd > 0.0) {
            any_variance = true;
        }
    }
    if (!any_variance) {
        throw std::invalid_argument("all centrality columns are constant; no correlations");
    }

    CorrelationMatrix matrix;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i; j < 6; ++j) {
            const auto r = pearson(*columns[i], *columns[j]);
            matrix.values[i][j] = r;
            matrix.values[j][i] = r; // symmetric by construction
        }
    }
    return matrix;
}

} // namespace qrnet
