#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = QRNET_CLI_PATH;
const std::string kFixture = std::string(QRNET_SOURCE_DIR) + "/tests/fixtures/mini_posts.xml";

int run(const std::string &command) {
    const int status = std::system((command + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &tag) {
        path = fs::temp_directory_path() / ("qrnet_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
};

std::string read_file(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze produces the documented outputs") {
    TempDir dir("analyze");
    const int code = run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() +
                         " --format csv,json,edgelist,dot");
    CHECK(code == 0);
    REQUIRE(fs::exists(dir.path / "report.json"));
    REQUIRE(fs::exists(dir.path / "centrality.csv"));
    REQUIRE(fs::exists(dir.path / "edges.tsv"));
    REQUIRE(fs::exists(dir.path / "graph.dot"));

    const auto report = nlohmann::json::parse(read_file(dir.path / "report.json"));
    CHECK(report["graph"]["nodes"] == 8);
    CHECK(report["graph"]["edges"] == 7);
    CHECK(report["roles"]["qr_ratio"] == 1.0);
    CHECK(report["partial"] == false);

    const std::string csv = read_file(dir.path / "centrality.csv");
    CHECK(csv.rfind("user_id,degree,betweenness,closeness,pagerank,eigenvector,harmonic\n", 0) ==
          0);
    // header + 8 nodes
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}

TEST_CASE("analyze rejects bad configuration with exit 2") {
    TempDir dir("badcfg");
    CHECK(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() + " --epsilon 0") == 2);
    CHECK(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() + " --damping 1.0") ==
          2);
    CHECK(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() +
              " --time-unit days") == 2);
    CHECK(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() +
              " --format csv,yaml") == 2);
    CHECK(run(kCli + " analyze --posts /no/such/file.xml --out " + dir.str()) == 2);
    CHECK(run(kCli + " analyze") == 2); // missing required options
}

TEST_CASE("analyze reports parse damage with exit 3") {
    TempDir dir("badxml");
    const fs::path bad = dir.path / "bad.xml";
    std::ofstream(bad) << "<posts><row Id=\"1\"";
    CHECK(run(kCli + " analyze --posts " + bad.string() + " --out " + dir.str()) == 3);
}

TEST_CASE("empty posts file yields an empty report with exit 0") {
    TempDir dir("empty");
    const fs::path empty = dir.path / "empty.xml";
    std::ofstream(empty) << "<?xml version=\"1.0\"?>\n<posts>\n</posts>\n";
    CHECK(run(kCli + " analyze --posts " + empty.string() + " --out " + dir.str()) == 0);
    const auto report = nlohmann::json::parse(read_file(dir.path / "report.json"));
    CHECK(report["graph"]["nodes"] == 0);
    CHECK(report["roles"]["qr_ratio"].is_null());
    const std::string csv = read_file(dir.path / "centrality.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1); // header only
}

TEST_CASE("compare tabulates reports") {
    TempDir dir("compare");
    REQUIRE(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() + "/a") == 0);
    REQUIRE(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() + "/b") == 0);
    const std::string csv_path = dir.str() + "/compare.csv";
    CHECK(run(kCli + " compare " + dir.str() + "/a/report.json " + dir.str() +
              "/b/report.json --csv " + csv_path) == 0);

    const std::string csv = read_file(csv_path);
    std::istringstream lines(csv);
    std::string header, row1, row2;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, row1));
    REQUIRE(std::getline(lines, row2));
    CHECK(std::count(header.begin(), header.end(), ',') == 13); // 14 columns
    CHECK(std::count(row1.begin(), row1.end(), ',') == 13);
    CHECK(row1 == row2); // identical inputs, identical rows
}

TEST_CASE("compare wants at least two matching reports") {
    TempDir dir("compare2");
    REQUIRE(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() + "/a") == 0);
    CHECK(run(kCli + " compare " + dir.str() + "/a/report.json --csv " + dir.str() +
              "/compare.csv") == 2);

    // Mangle the schema version.
    auto doc = nlohmann::json::parse(read_file(dir.path / "a" / "report.json"));
    doc["schema_version"] = 999;
    std::ofstream(dir.path / "stale.json") << doc.dump(2);
    CHECK(run(kCli + " compare " + dir.str() + "/a/report.json " + dir.str() +
              "/stale.json --csv " + dir.str() + "/compare.csv") == 2);
}

TEST_CASE("fetch validates slugs without touching the network") {
    CHECK(run(kCli + " fetch 'Bad Slug!'") == 2);
    CHECK(run(kCli + " fetch UPPERCASE.example") == 2);
}

TEST_CASE("analyze is deterministic across thread counts") {
    TempDir dir("threads");
    REQUIRE(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() +
                "/t1 --threads 1") == 0);
    REQUIRE(run(kCli + " analyze --posts " + kFixture + " --out " + dir.str() +
                "/t8 --threads 8") == 0);
    CHECK(read_file(dir.path / "t1" / "centrality.csv") ==
          read_file(dir.path / "t8" / "centrality.csv"));
    CHECK(read_file(dir.path / "t1" / "report.json") == read_file(dir.path / "t8" / "report.json"));
    CHECK(read_file(dir.path / "t1" / "edges.tsv") == read_file(dir.path / "t8" / "edges.tsv"));
}

} // TEST_SUITE
