#include "qrnet/posts.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstring>

#include "qrnet/timestamp.hpp"

namespace qrnet {

ParseError::ParseError(const std::string &message, std::uint64_t byte_offset)
    : std::runtime_error(message + " (byte offset " + std::to_string(byte_offset) + ")"),
      byte_offset_(byte_offset) {}

namespace {

constexpr std::size_t kChunkSize = 256 * 1024;

// Buffered window over the input stream. The window only ever holds the
// element currently being scanned plus one read-ahead chunk, so memory stays
// bounded by the largest single row.
class Cursor {
public:
    explicit Cursor(std::istream &in) : in_(in) {}

    std::uint64_t offset() const { return base_ + pos_; }

    bool ensure(std::size_t need) {
        while (buf_.size() - pos_ < need && fill()) {
        }
        return buf_.size() - pos_ >= need;
    }

    bool at_end() { return !ensure(1); }

    char peek(std::size_t ahead = 0) { return buf_[pos_ + ahead]; }

    void advance(std::size_t n = 1) { pos_ += n; }

    std::string_view window(std::size_t from, std::size_t len) const {
        return std::string_view(buf_).substr(pos_ + from, len);
    }

    void skip_whitespace() {
        while (ensure(1)) {
            const char c = buf_[pos_];
            if (c != ' ' && c != '\t' && c != '\r' && c != '\n') {
                return;
            }
            ++pos_;
        }
    }

    // Relative index of the first `c` at or after the current position, or
    // npos when the stream ends first.
    std::size_t find(char c) {
        std::size_t i = 0;
        while (true) {
            if (!ensure(i + 1)) {
                return std::string_view::npos;
            }
            const char *data = buf_.data() + pos_;
            const std::size_t size = buf_.size() - pos_;
            const void *hit = std::memchr(data + i, c, size - i);
            if (hit != nullptr) {
                return static_cast<std::size_t>(static_cast<const char *>(hit) - data);
            }
            i = size;
            if (!fill()) {
                return std::string_view::npos;
            }
        }
    }

    // Relative index of the first `>` outside quoted attribute values.
    std::size_t find_tag_end() {
        std::size_t i = 0;
        char quote = 0;
        while (ensure(i + 1)) {
            const char c = buf_[pos_ + i];
            if (quote != 0) {
                if (c == quote) {
                    quote = 0;
                }
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                return i;
            }
            ++i;
        }
        return std::string_view::npos;
    }

    // Relative index just past the first occurrence of `needle`, or npos.
    std::size_t skip_past(std::string_view needle) {
        std::size_t i = 0;
        while (ensure(i + needle.size())) {
            if (window(i, needle.size()) == needle) {
                return i + needle.size();
            }
            ++i;
        }
        return std::string_view::npos;
    }

private:
    bool fill() {
        if (pos_ > 0) {
            buf_.erase(0, pos_);
            base_ += pos_;
            pos_ = 0;
        }
        if (eof_) {
            return false;
        }
        const std::size_t old_size = buf_.size();
        buf_.resize(old_size + kChunkSize);
        in_.read(buf_.data() + old_size, static_cast<std::streamsize>(kChunkSize));
        const auto got = static_cast<std::size_t>(in_.gcount());
        buf_.resize(old_size + got);
        if (got < kChunkSize) {
            eof_ = true;
        }
        return got > 0;
    }

    std::istream &in_;
    std::string buf_;
    std::size_t pos_ = 0;
    std::uint64_t base_ = 0;
    bool eof_ = false;
};

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == ':' ||
           c == '-' || c == '.';
}

std::string decode_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        if (raw[i] != '&') {
            out.push_back(raw[i++]);
            continue;
        }
        const std::size_t end = raw.find(';', i);
        if (end == std::string_view::npos) {
            out.append(raw.substr(i));
            break;
        }
        const std::string_view entity = raw.substr(i + 1, end - i - 1);
        if (entity == "amp") {
            out.push_back('&');
        } else if (entity == "lt") {
            out.push_back('<');
        } else if (entity == "gt") {
            out.push_back('>');
        } else if (entity == "quot") {
            out.push_back('"');
        } else if (entity == "apos") {
            out.push_back('\'');
        } else if (!entity.empty() && entity[0] == '#') {
            int code = 0;
            const bool hex = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X');
            const std::string_view digits = entity.substr(hex ? 2 : 1);
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                                   code, hex ? 16 : 10);
            if (ec == std::errc{} && ptr == digits.data() + digits.size() && code > 0 &&
                code < 128) {
                out.push_back(static_cast<char>(code));
            } else {
                out.append(raw.substr(i, end - i + 1));
            }
        } else {
            out.append(raw.substr(i, end - i + 1));
        }
        i = end + 1;
    }
    return out;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    std::string decoded;
    if (text.find('&') != std::string_view::npos) {
        decoded = decode_entities(text);
        text = decoded;
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

struct RowAttributes {
    std::optional<std::string_view> id;
    std::optional<std::string_view> post_type_id;
    std::optional<std::string_view> parent_id;
    std::optional<std::string_view> owner_user_id;
    std::optional<std::string_view> creation_date;
};

// Attribute scan over one row's `name="value"` list. Returns false on syntax
// damage inside the row; the caller then skips the row as malformed.
bool scan_attributes(std::string_view attrs, RowAttributes &out) {
    std::size_t i = 0;
    while (i < attrs.size()) {
        while (i < attrs.size() && std::isspace(static_cast<unsigned char>(attrs[i])) != 0) {
            ++i;
        }
        if (i >= attrs.size()) {
            break;
        }
        const std::size_t name_begin = i;
        while (i < attrs.size() && is_name_char(attrs[i])) {
            ++i;
        }
        if (i == name_begin || i >= attrs.size() || attrs[i] != '=') {
            return false;
        }
        const std::string_view name = attrs.substr(name_begin, i - name_begin);
        ++i;
        if (i >= attrs.size() || (attrs[i] != '"' && attrs[i] != '\'')) {
            return false;
        }
        const char quote = attrs[i++];
        const std::size_t value_begin = i;
        const std::size_t value_end = attrs.find(quote, value_begin);
        if (value_end == std::string_view::npos) {
            return false;
        }
        const std::string_view value = attrs.substr(value_begin, value_end - value_begin);
        i = value_end + 1;

        if (name == "Id") {
            out.id = value;
        } else if (name == "PostTypeId") {
            out.post_type_id = value;
        } else if (name == "ParentId") {
            out.parent_id = value;
        } else if (name == "OwnerUserId") {
            out.owner_user_id = value;
        } else if (name == "CreationDate") {
            out.creation_date = value;
        }
    }
    return true;
}

// Buckets a single row. Precedence: structural validity (ids, date, the
// Answer<->ParentId invariant) is judged before the type filter and the owner
// check, so damaged rows always land in skipped_malformed.
void process_row(std::string_view attrs, IngestStats &stats, const PostSink &sink) {
    ++stats.rows_read;

    RowAttributes raw;
    if (!scan_attributes(attrs, raw)) {
        ++stats.skipped_malformed;
        return;
    }
    std::optional<std::int64_t> post_id;
    if (raw.id) {
        post_id = parse_int(*raw.id);
    }
    std::optional<std::int64_t> type_id;
    if (raw.post_type_id) {
        type_id = parse_int(*raw.post_type_id);
    }
    if (!post_id || *post_id <= 0 || !type_id || !raw.creation_date) {
        ++stats.skipped_malformed;
        return;
    }

    std::optional<std::int64_t> creation;
    {
        std::string_view v = *raw.creation_date;
        std::string decoded;
        if (v.find('&') != std::string_view::npos) {
            decoded = decode_entities(v);
            v = decoded;
        }
        creation = parse_creation_date(v);
    }
    if (!creation) {
        ++stats.skipped_malformed;
        return;
    }

    if (*type_id != 1 && *type_id != 2) {
        ++stats.skipped_other_type;
        return;
    }

    const bool is_answer = *type_id == 2;
    std::optional<std::int64_t> parent;
    if (is_answer) {
        parent = raw.parent_id ? parse_int(*raw.parent_id) : std::nullopt;
        if (!parent || *parent <= 0) {
            ++stats.skipped_malformed;
            return;
        }
    } else if (raw.parent_id) {
        ++stats.skipped_malformed;
        return;
    }

    if (!raw.owner_user_id) {
        ++stats.skipped_missing_owner;
        return;
    }
    const auto owner = parse_int(*raw.owner_user_id);
    if (!owner) {
        ++stats.skipped_malformed;
        return;
    }

    PostRecord record;
    record.post_id = *post_id;
    record.type = is_answer ? PostType::answer : PostType::question;
    record.parent_id = parent;
    record.owner_user_id = owner;
    record.creation_ms = *creation;
    if (is_answer) {
        ++stats.answers;
    } else {
        ++stats.questions;
    }
    sink(record);
}

} // namespace

IngestStats parse_posts(std::istream &in, const PostSink &sink) {
    Cursor cur(in);
    IngestStats stats;

    // UTF-8 BOM
    if (cur.ensure(3) && cur.window(0, 3) == "\xEF\xBB\xBF") {
        cur.advance(3);
    }

    bool in_root = false;
    bool root_closed = false;

    while (true) {
        cur.skip_whitespace();
        if (cur.at_end()) {
            break;
        }
        const std::uint64_t element_offset = cur.offset();
        if (cur.peek() != '<') {
            throw ParseError("unexpected character outside element markup", element_offset);
        }
        if (!cur.ensure(2)) {
            throw ParseError("truncated element", element_offset);
        }
        const char kind = cur.peek(1);
        if (kind == '?') {
            const std::size_t end = cur.skip_past("?>");
            if (end == std::string_view::npos) {
                throw ParseError("unterminated processing instruction", element_offset);
            }
            cur.advance(end);
            continue;
        }
        if (kind == '!') {
            const bool comment = cur.ensure(4) && cur.window(0, 4) == "<!--";
            const std::size_t end = comment ? cur.skip_past("-->") : cur.skip_past(">");
            if (end == std::string_view::npos) {
                throw ParseError(comment ? "unterminated comment" : "unterminated declaration",
                                 element_offset);
            }
            cur.advance(end);
            continue;
        }
        if (kind == '/') {
            if (!in_root) {
                throw ParseError("close tag without matching open element", element_offset);
            }
            const std::size_t end = cur.find('>');
            if (end == std::string_view::npos) {
                throw ParseError("unterminated close tag", element_offset);
            }
            cur.advance(end + 1);
            in_root = false;
            root_closed = true;
            continue;
        }

        // Open tag.
        std::size_t name_len = 0;
        while (cur.ensure(name_len + 2) && is_name_char(cur.peek(name_len + 1))) {
            ++name_len;
        }
        if (name_len == 0) {
            throw ParseError("malformed element name", element_offset);
        }
        const std::size_t end = cur.find_tag_end();
        if (end == std::string_view::npos) {
            throw ParseError("unterminated element", element_offset);
        }
        const bool self_closing = end > 0 && cur.peek(end - 1) == '/';

        if (!in_root) {
            if (root_closed) {
                throw ParseError("multiple root elements", element_offset);
            }
            root_closed = self_closing;
            in_root = !self_closing;
            cur.advance(end + 1);
            continue;
        }

        const std::string_view name = cur.window(1, name_len);
        if (name != "row") {
            throw ParseError("unexpected element <" + std::string(name) + "> inside root",
                             element_offset);
        }
        if (!self_closing) {
            throw ParseError("row element is not self-closing", element_offset);
        }
        const std::size_t attrs_begin = 1 + name_len;
        process_row(cur.window(attrs_begin, end - 1 - attrs_begin), stats, sink);
        cur.advance(end + 1);
    }

    if (in_root) {
        throw ParseError("unexpected end of input: root element not closed", cur.offset());
    }
    if (!root_closed) {
        throw ParseError("missing root element", cur.offset());
    }
    return stats;
}

ParsedPosts parse_posts(std::istream &in) {
    ParsedPosts result;
    result.stats =
        parse_posts(in, [&](const PostRecord &record) { result.records.push_back(record); });
    return result;
}

std::string to_row_xml(const PostRecord &record) {
    std::string out = "<row Id=\"" + std::to_string(record.post_id) + "\" PostTypeId=\"" +
                      std::to_string(static_cast<int>(record.type)) + "\"";
    if (record.parent_id) {
        out += " ParentId=\"" + std::to_string(*record.parent_id) + "\"";
    }
    out += " CreationDate=\"" + format_creation_date(record.creation_ms) + "\"";
    if (record.owner_user_id) {
        out += " OwnerUserId=\"" + std::to_string(*record.owner_user_id) + "\"";
    }
    out += " />";
    return out;
}

} // namespace qrnet
