#ifndef QRNET_ANALYTICS_HPP_
#define QRNET_ANALYTICS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qrnet/centrality.hpp"
#include "qrnet/interactions.hpp"

namespace qrnet {

enum class UserRole : std::uint8_t { questioner_only, responder_only, both };

/// Partition of the users appearing in interactions by which side(s) of an
/// edge they occupy, plus the questioners/responders imbalance ratio.
struct RoleSummary {
    std::uint64_t questioners_only = 0;
    std::uint64_t responders_only = 0;
    std::uint64_t both = 0;
    // questioners_only / responders_only; absent when there are no
    // responder-only users (never reported as infinity).
    std::optional<double> qr_ratio;

    std::uint64_t participants() const { return questioners_only + responders_only + both; }
};

struct RoleClassification {
    RoleSummary summary;
    // (user id, role), ascending by id; exactly the participating users.
    std::vector<std::pair<std::int64_t, UserRole>> roles;
};

RoleClassification classify_roles(std::span<const Interaction> interactions);

std::optional<double> qr_ratio(std::uint64_t questioners_only, std::uint64_t responders_only);

/// Presentation order of the six measures in the statistics summary.
inline constexpr std::array<std::string_view, 6> kStatsMeasureOrder = {
    "degree", "betweenness", "closeness", "pagerank", "eigenvector", "harmonic"};

/// Fixed order of measures in correlation matrices.
inline constexpr std::array<std::string_view, 6> kCorrelationMeasureOrder = {
    "degree", "betweenness", "pagerank", "closeness", "harmonic", "eigenvector"};

struct MeasureStats {
    double mean = 0.0;
    // Sample (n-1) standard deviation by default; absent for single-node
    // tables where it is undefined.
    std::optional<double> std_dev;
};

/// Mean and standard deviation per measure, indexed by kStatsMeasureOrder.
struct MetricStats {
    std::array<MeasureStats, 6> measures;
};

/// Requires a non-empty table. `population_std` switches the estimator to the
/// n denominator.
MetricStats metric_stats(const CentralityTable &table, bool population_std = false);

/// 6x6 Pearson matrix over the per-node score vectors, measure order given by
/// kCorrelationMeasureOrder. Entries touching a zero-variance vector are
/// absent rather than zero.
struct CorrelationMatrix {
    std::array<std::array<std::optional<double>, 6>, 6> values;
};

/// Requires at least 3 nodes and at least one measure with nonzero variance;
/// throws std::invalid_argument otherwise.
CorrelationMatrix correlation_matrix(const CentralityTable &table);

/// Pearson correlation of two equal-length vectors; absent when either has
/// zero variance. Clamped to [-1, 1].
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

double mean_of(std::span<const double> values);
std::optional<double> std_dev_of(std::span<const double> values, bool population = false);

} // namespace qrnet

#endif // QRNET_ANALYTICS_HPP_
