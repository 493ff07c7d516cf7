#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "qdv/group_cache.hpp"
#include "qdv/report.hpp"
#include "qdv/symplectic.hpp"
#include "test_util.hpp"

using namespace qdv;
using qdv::test::space;
using qdv::test::sp_table;

TEST_CASE("hex round trip", "[cache]") {
    std::string bytes;
    for (int i = 0; i < 256; ++i) bytes.push_back(static_cast<char>(i));
    REQUIRE(from_hex(to_hex(bytes)) == bytes);
    REQUIRE_THROWS_AS(from_hex("abc"), std::invalid_argument);
    REQUIRE_THROWS_AS(from_hex("zz"), std::invalid_argument);
}

TEST_CASE("group cache preserves element order", "[cache]") {
    const auto dir = std::filesystem::temp_directory_path() / "qdv_cache_test";
    std::filesystem::remove_all(dir);
    const std::string path = (dir / "sp_4_2.grp").string();

    const auto& table = sp_table(2, 2);
    GroupCacheRecord rec;
    rec.name = "sp_4_2";
    rec.kind = "matrix";
    for (const SympMatrix& m : table.elements()) rec.encodings.push_back(sp_encode(2, m));
    save_group_cache(path, rec);

    const auto loaded = load_group_cache(path);
    REQUIRE(loaded.has_value());
    REQUIRE(loaded->name == "sp_4_2");
    REQUIRE(loaded->kind == "matrix");
    REQUIRE(loaded->encodings.size() == table.order());
    for (std::size_t i = 0; i < table.order(); ++i)
        REQUIRE(sp_decode(2, 4, loaded->encodings[i]) == table.element(i));

    REQUIRE_FALSE(load_group_cache((dir / "missing.grp").string()).has_value());
    std::filesystem::remove_all(dir);
}

TEST_CASE("malformed cache files are rejected", "[cache]") {
    const auto dir = std::filesystem::temp_directory_path() / "qdv_cache_bad";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "bad.grp").string();
    {
        std::ofstream out(path);
        out << "group g order 5 kind matrix\nff\n";  // promises 5, delivers 1
    }
    REQUIRE_THROWS(load_group_cache(path));
    {
        std::ofstream out(path);
        out << "not a header\n";
    }
    REQUIRE_THROWS(load_group_cache(path));
    std::filesystem::remove_all(dir);
}

TEST_CASE("report renderings", "[report]") {
    std::vector<DesignReport> reports;
    reports.push_back({"phi3[d=4]", "fixed-points", "{d:4,t:3}", "6", "6", true, 12.5, 7});
    reports.push_back({"claim,with\"comma", "m", "{}", "1", "2", false, 0.5, 7});

    const std::string table = render_table(reports, true);
    REQUIRE(table.find("phi3[d=4]") != std::string::npos);
    REQUIRE(table.find("NO") != std::string::npos);
    REQUIRE(table.find("ms") == std::string::npos);  // runtime omitted

    const std::string json = render_json_lines(reports, false);
    REQUIRE(json.find("\"claim\":\"phi3[d=4]\"") != std::string::npos);
    REQUIRE(json.find("\"runtime_ms\"") != std::string::npos);
    REQUIRE(json.find("\"seed\":7") != std::string::npos);

    const std::string csv = render_csv(reports, true);
    REQUIRE(csv.find("\"claim,with\"\"comma\"") != std::string::npos);
    REQUIRE(csv.find("runtime") == std::string::npos);

    const std::string md = render_markdown(reports, true);
    REQUIRE(md.find("| phi3[d=4] |") != std::string::npos);

    REQUIRE_THROWS_AS(render_reports(reports, "yaml", false), std::invalid_argument);
}

TEST_CASE("float formatting uses 12 significant digits", "[report]") {
    REQUIRE(format_float(0.25) == "0.25");
    REQUIRE(format_float(1.0 / 3.0) == "0.333333333333");
}
