#ifndef QRNET_INTERACTIONS_HPP_
#define QRNET_INTERACTIONS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "qrnet/posts.hpp"

namespace qrnet {

/// Unit in which response times enter the edge-weight formula. Interactions
/// always carry hours; the conversion happens at graph-build time.
enum class TimeUnit : std::uint8_t { hours, minutes, seconds };

/// Multiplier converting a duration in hours into `unit`.
double time_unit_per_hour(TimeUnit unit);

/// One question/answer pair: the questioner asked, the responder answered
/// `response_time_hours` later.
struct Interaction {
    std::int64_t questioner = 0;
    std::int64_t responder = 0;
    double response_time_hours = 0.0;
    std::int64_t question_id = 0;
    std::int64_t answer_id = 0;

    bool operator==(const Interaction &) const = default;
};

/// Answer rows that cannot become interactions, by reason.
struct AnomalyCounts {
    std::uint64_t negative_response_time = 0;
    std::uint64_t self_answers = 0;
    std::uint64_t orphan_answers = 0;
};

struct DeriveResult {
    std::vector<Interaction> interactions;
    AnomalyCounts anomalies;
};

/// Joins answers to their parent questions. Input order is irrelevant; an
/// index over questions is built internally. Answers whose parent question is
/// missing, that predate their question, or that answer the author's own
/// question are dropped and counted.
DeriveResult derive_interactions(std::span<const PostRecord> posts);

/// The response-time edge weight 1/(r + epsilon). Faster answers weigh more;
/// epsilon keeps instant answers finite. Requires r >= 0 and epsilon > 0.
double edge_weight(double response_time, double epsilon);

} // namespace qrnet

#endif // QRNET_INTERACTIONS_HPP_
