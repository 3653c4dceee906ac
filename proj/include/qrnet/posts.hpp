#ifndef QRNET_POSTS_HPP_
#define QRNET_POSTS_HPP_

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrnet {

enum class PostType : std::uint8_t { question = 1, answer = 2 };

/// One usable row of a Posts dump: a question or an answer with a known owner
/// and creation time. Rows of other types never become PostRecords.
struct PostRecord {
    std::int64_t post_id = 0;
    PostType type = PostType::question;
    std::optional<std::int64_t> parent_id; // present iff type == answer
    std::optional<std::int64_t> owner_user_id;
    std::int64_t creation_ms = 0; // UTC milliseconds since epoch

    bool operator==(const PostRecord &) const = default;
};

/// Per-run ingestion counters. Every row read lands in exactly one bucket:
///
///   rows_read = questions + answers + skipped_other_type
///             + skipped_malformed + skipped_missing_owner
///
/// `skipped_other_type` holds structurally valid rows whose PostTypeId is
/// outside {1,2} (wiki, moderation, ...); they are dropped silently because
/// only questions and answers participate in the interaction network.
struct IngestStats {
    std::uint64_t rows_read = 0;
    std::uint64_t questions = 0;
    std::uint64_t answers = 0;
    std::uint64_t skipped_other_type = 0;
    std::uint64_t skipped_malformed = 0;
    std::uint64_t skipped_missing_owner = 0;
};

/// Unrecoverable structural damage outside row boundaries (bad root element,
/// unterminated tag, trailing garbage). Row-level problems never throw; they
/// are counted in IngestStats instead.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &message, std::uint64_t byte_offset);

    std::uint64_t byte_offset() const { return byte_offset_; }

private:
    std::uint64_t byte_offset_;
};

using PostSink = std::function<void(const PostRecord &)>;

/// Streams a Posts XML dump, invoking `sink` once per valid question/answer
/// row. Single pass, memory bounded by the largest single row regardless of
/// file size.
///
/// Accepted shape: optional XML prolog/comments, one root element, then
/// self-closing `<row .../>` elements until the matching close tag. Rows with
/// unparsable Id/CreationDate, an Answer missing ParentId, or a Question
/// carrying one are skipped and counted as malformed. Rows without
/// OwnerUserId are skipped and counted separately.
IngestStats parse_posts(std::istream &in, const PostSink &sink);

struct ParsedPosts {
    std::vector<PostRecord> records;
    IngestStats stats;
};

/// Convenience wrapper materializing all records.
ParsedPosts parse_posts(std::istream &in);

/// Serializes a record back to a `<row .../>` element carrying exactly the
/// attributes parse_posts reads. Re-parsing the result yields the same record.
std::string to_row_xml(const PostRecord &record);

} // namespace qrnet

#endif // QRNET_POSTS_HPP_
