#ifndef QRNET_TIMESTAMP_HPP_
#define QRNET_TIMESTAMP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qrnet {

// Stack Exchange dumps carry timestamps as `YYYY-MM-DDThh:mm:ss.fff` with no
// zone designator; they are treated as UTC throughout. Values are stored as
// milliseconds since the Unix epoch.

/// Parses a dump timestamp. The fractional part is optional (1-3 digits);
/// everything else is mandatory and range-checked. Returns nullopt on any
/// deviation.
std::optional<std::int64_t> parse_creation_date(std::string_view text);

/// Formats epoch milliseconds back to the dump form `YYYY-MM-DDThh:mm:ss.fff`.
std::string format_creation_date(std::int64_t epoch_ms);

} // namespace qrnet

#endif // QRNET_TIMESTAMP_HPP_
