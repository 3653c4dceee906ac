#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include "qrnet/httplib_compat.hpp"

#include "qrnet/fetch.hpp"

using namespace qrnet;
namespace fs = std::filesystem;

namespace {

struct LocalArchive {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    LocalArchive() {
        server.Get("/dl/stackexchange/good.example.7z",
                   [](const httplib::Request &, httplib::Response &res) {
                       res.set_content("seven-zip-bytes", "application/x-7z-compressed");
                   });
        server.Get("/dl/stackexchange/truncated.example.7z",
                   [](const httplib::Request &, httplib::Response &res) {
                       res.set_content_provider(
                           100, "application/x-7z-compressed",
                           [](std::size_t offset, std::size_t, httplib::DataSink &sink) {
                               if (offset >= 10) {
                                   return false; // abort mid-transfer
                               }
                               sink.write("x", 1);
                               return true;
                           });
                   });
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }

    ~LocalArchive() {
        server.stop();
        thread.join();
    }

    std::string base() const {
        return "http://127.0.0.1:" + std::to_string(port) + "/dl/stackexchange";
    }
};

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qrnet_fetch_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_SUITE("fetch") {

TEST_CASE("slug validation") {
    CHECK(valid_site_slug("genai.stackexchange.com"));
    CHECK(valid_site_slug("no-such-site.example"));
    CHECK(valid_site_slug("3dprinting.stackexchange.com"));
    CHECK(!valid_site_slug(""));
    CHECK(!valid_site_slug("UPPER.example"));
    CHECK(!valid_site_slug("spaces here"));
    CHECK(!valid_site_slug("../../etc/passwd"));
    CHECK(!valid_site_slug("-leading.example"));
    CHECK(!valid_site_slug("trailing.example."));
}

TEST_CASE("invalid slug fails before any transfer") {
    TempDir dir;
    CHECK_THROWS_AS(fetch_dump("Bad Slug!", dir.path), FetchError);
    try {
        fetch_dump("Bad Slug!", dir.path);
    } catch (const FetchError &error) {
        CHECK(error.kind() == FetchErrorKind::invalid_slug);
    }
    CHECK(fs::is_empty(dir.path));
}

TEST_CASE("successful download lands atomically") {
    LocalArchive archive;
    TempDir dir;
    const FetchResult result = fetch_dump("good.example", dir.path, archive.base());
    CHECK(result.bytes == 15);
    CHECK(result.path == dir.path / "good.example.7z");
    REQUIRE(fs::exists(result.path));
    std::ifstream in(result.path, std::ios::binary);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == "seven-zip-bytes");
    CHECK(!fs::exists(dir.path / "good.example.7z.part"));
}

TEST_CASE("missing archive maps to an http error, nothing left behind") {
    LocalArchive archive;
    TempDir dir;
    try {
        fetch_dump("no-such-site.example", dir.path, archive.base());
        FAIL("expected FetchError");
    } catch (const FetchError &error) {
        CHECK(error.kind() == FetchErrorKind::http_status);
        CHECK(error.status() == 404);
    }
    CHECK(fs::is_empty(dir.path));
}

TEST_CASE("interrupted transfer leaves no file") {
    LocalArchive archive;
    TempDir dir;
    CHECK_THROWS_AS(fetch_dump("truncated.example", dir.path, archive.base()), FetchError);
    CHECK(fs::is_empty(dir.path));
}

TEST_CASE("environment variable supplies the base url") {
    LocalArchive archive;
    TempDir dir;
    ::setenv(kArchiveBaseEnv, archive.base().c_str(), 1);
    const FetchResult result = fetch_dump("good.example", dir.path);
    ::unsetenv(kArchiveBaseEnv);
    CHECK(result.bytes == 15);
}

TEST_CASE("unreachable host is a network error") {
    TempDir dir;
    try {
        fetch_dump("good.example", dir.path, "http://127.0.0.1:1/dl");
        FAIL("expected FetchError");
    } catch (const FetchError &error) {
        CHECK(error.kind() == FetchErrorKind::network);
    }
    CHECK(fs::is_empty(dir.path));
}

} // TEST_SUITE
