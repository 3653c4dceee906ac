#include "qrnet/interactions.hpp"

#include <stdexcept>
#include <unordered_map>

namespace qrnet {

double time_unit_per_hour(TimeUnit unit) {
    switch (unit) {
    case TimeUnit::hours:
        return 1.0;
    case TimeUnit::minutes:
        return 60.0;
    case TimeUnit::seconds:
        return 3600.0;
    }
    throw std::invalid_argument("unknown time unit");
}

DeriveResult derive_interactions(std::span<const PostRecord> posts) {
    struct QuestionInfo {
        std::int64_t owner;
        std::int64_t creation_ms;
    };
    std::unordered_map<std::int64_t, QuestionInfo> questions;
    questions.reserve(posts.size() / 2 + 1);
    for (const PostRecord &post : posts) {
        if (post.type == PostType::question && post.owner_user_id) {
            questions.emplace(post.post_id, QuestionInfo{*post.owner_user_id, post.creation_ms});
        }
    }

    DeriveResult result;
    for (const PostRecord &post : posts) {
        if (post.type != PostType::answer || !post.owner_user_id || !post.parent_id) {
            continue;
        }
        const auto it = questions.find(*post.parent_id);
        if (it == questions.end()) {
            ++result.anomalies.orphan_answers;
            continue;
        }
        const std::int64_t delta_ms = post.creation_ms - it->second.creation_ms;
        if (delta_ms < 0) {
            ++result.anomalies.negative_response_time;
            continue;
        }
        if (it->second.owner == *post.owner_user_id) {
            ++result.anomalies.self_answers;
            continue;
        }
        result.interactions.push_back(Interaction{
            .questioner = it->second.owner,
            .responder = *post.owner_user_id,
            .response_time_hours = static_cast<double>(delta_ms) / 3'600'000.0,
            .question_id = it->first,
            .answer_id = post.post_id,
        });
    }
    return result;
}

double edge_weight(double response_time, double epsilon) {
    if (response_time < 0.0) {
        throw std::invalid_argument("response time must be non-negative");
    }
    if (epsilon <= 0.0) {
        throw std::invalid_argument("epsilon must be positive");
    }
    return 1.0 / (response_time + epsilon);
}

} // namespace qrnet
