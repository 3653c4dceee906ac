#ifndef QRNET_FETCH_HPP_
#define QRNET_FETCH_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace qrnet {

/// Default location of the Stack Exchange data-dump archives.
inline constexpr const char *kDefaultArchiveBase =
    "https://archive.org/download/stackexchange";

/// Environment variable overriding the archive base URL.
inline constexpr const char *kArchiveBaseEnv = "QRNET_ARCHIVE_BASE";

enum class FetchErrorKind : std::uint8_t {
    invalid_slug,
    network,
    http_status,
    length_mismatch,
    io,
};

class FetchError : public std::runtime_error {
public:
    FetchError(FetchErrorKind kind, const std::string &message, int status = 0)
        : std::runtime_error(message), kind_(kind), status_(status) {}

    FetchErrorKind kind() const { return kind_; }
    int status() const { return status_; }

private:
    FetchErrorKind kind_;
    int status_;
};

struct FetchResult {
    std::filesystem::path path;
    std::uint64_t bytes = 0;
};

/// Downloads `<base>/<site_slug>.7z` into `destination_dir` (created if
/// missing). The transfer goes to a temporary `.part` file that is renamed
/// into place only after the size matches the server-announced length; a
/// failed transfer leaves nothing behind. No decompression is performed.
///
/// `base_url` empty means: use QRNET_ARCHIVE_BASE if set, else the public
/// archive host. Slugs are limited to lowercase alphanumerics, dots, and
/// inner hyphens.
FetchResult fetch_dump(const std::string &site_slug,
                       const std::filesystem::path &destination_dir,
                       std::string base_url = {});

bool valid_site_slug(const std::string &slug);

} // namespace qrnet

#endif // QRNET_FETCH_HPP_
