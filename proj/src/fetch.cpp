#include "qrnet/fetch.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>

#include "qrnet/httplib_compat.hpp"

namespace qrnet {

namespace {

struct SplitUrl {
    std::string origin;    // scheme://host[:port]
    std::string path_base; // leading path, no trailing slash
};

SplitUrl split_url(const std::string &url) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw FetchError(FetchErrorKind::network, "base URL lacks a scheme: " + url);
    }
    const std::size_t path_start = url.find('/', scheme_end + 3);
    SplitUrl result;
    if (path_start == std::string::npos) {
        result.origin = url;
    } else {
        result.origin = url.substr(0, path_start);
        result.path_base = url.substr(path_start);
        while (!result.path_base.empty() && result.path_base.back() == '/') {
            result.path_base.pop_back();
        }
    }
    return result;
}

// Removes the partial file; failures while cleaning up are not interesting.
struct PartFileGuard {
    std::filesystem::path path;
    bool armed = true;

    ~PartFileGuard() {
        if (armed) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
    }
};

} // namespace

bool valid_site_slug(const std::string &slug) {
    if (slug.empty() || slug.front() == '-' || slug.front() == '.' || slug.back() == '-' ||
        slug.back() == '.') {
        return false;
    }
    for (const char c : slug) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '-';
        if (!ok) {
            return false;
        }
    }
    return true;
}

FetchResult fetch_dump(const std::string &site_slug,
                       const std::filesystem::path &destination_dir, std::string base_url) {
    if (!valid_site_slug(site_slug)) {
        throw FetchError(FetchErrorKind::invalid_slug, "invalid site slug: " + site_slug);
    }
    if (base_url.empty()) {
        if (const char *env = std::getenv(kArchiveBaseEnv); env != nullptr && env[0] != '\0') {
            base_url = env;
        } else {
            base_url = kDefaultArchiveBase;
        }
    }
    const SplitUrl url = split_url(base_url);
    const std::string request_path = url.path_base + "/" + site_slug + ".7z";

    std::error_code ec;
    std::filesystem::create_directories(destination_dir, ec);
    if (ec) {
        throw FetchError(FetchErrorKind::io,
                         "cannot create destination directory: " + destination_dir.string());
    }
    const std::filesystem::path final_path = destination_dir / (site_slug + ".7z");
    const std::filesystem::path part_path = destination_dir / (site_slug + ".7z.part");

#ifndef QRNET_HAVE_OPENSSL
    if (url.origin.rfind("https://", 0) == 0) {
        throw FetchError(FetchErrorKind::network,
                         "built without TLS support; use an http:// archive base");
    }
#endif

    httplib::Client client(url.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30, 0);
    client.set_read_timeout(120, 0);

    std::uint64_t received = 0;
    std::uint64_t announced = 0;
    int status = 0;
    {
        std::ofstream out(part_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw FetchError(FetchErrorKind::io, "cannot open " + part_path.string());
        }
        PartFileGuard guard{part_path};

        auto res = client.Get(
            request_path,
            [&](const httplib::Response &response) {
                status = response.status;
                if (const std::string len = response.get_header_value("Content-Length");
                    !len.empty()) {
                    std::from_chars(len.data(), len.data() + len.size(), announced);
                }
                return response.status < 400;
            },
            [&](const char *data, std::size_t size) {
                out.write(data, static_cast<std::streamsize>(size));
                received += size;
                return out.good();
            });

        if (!res && status == 0) {
            throw FetchError(FetchErrorKind::network,
                             "transfer failed: " + httplib::to_string(res.error()));
        }
        if (status >= 400) {
            throw FetchError(FetchErrorKind::http_status,
                             "server returned status " + std::to_string(status) + " for " +
                                 request_path,
                             status);
        }
        if (!res) {
            throw FetchError(FetchErrorKind::network,
                             "transfer interrupted: " + httplib::to_string(res.error()));
        }
        out.flush();
        if (!out.good()) {
            throw FetchError(FetchErrorKind::io, "write failed: " + part_path.string());
        }
        if (announced != 0 && received != announced) {
            throw FetchError(FetchErrorKind::length_mismatch,
                             "expected " + std::to_string(announced) + " bytes, received " +
                                 std::to_string(received));
        }
        out.close();
        std::filesystem::rename(part_path, final_path, ec);
        if (ec) {
            throw FetchError(FetchErrorKind::io, "cannot move archive into place: " + ec.message());
        }
        guard.armed = false;
    }
    return FetchResult{final_path, received};
}

} // namespace qrnet
