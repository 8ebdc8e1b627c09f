#include "orbas/error.hpp"
#include "orbas/repository.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>

namespace fs = std::filesystem;
using orbas::RepositoryIndex;
using orbas::testing::TempDir;
using orbas::testing::write_file;

namespace {

const char* kClient =
    "import java.sql.Connection; class Client { Connection conn; void run(){ conn.open(); conn.close(); } }";
const char* kSocket =
    "import java.net.Socket; class Net { Socket s; void go(){ s.connect(); s.close(); } }";
const char* kOther = "import java.io.Reader; class R { Reader r; void m(){ r.read(); } }";

std::vector<std::string> ids_of(const RepositoryIndex& index, std::string_view query) {
    std::vector<std::string> out;
    for (const auto& e : orbas::lookup(index, query)) out.push_back(e.get().id);
    return out;
}

std::vector<std::string> added_ids(const std::vector<orbas::AddOutcome>& outcomes) {
    std::vector<std::string> out;
    for (const auto& o : outcomes) out.push_back(o.id.value_or("<error>"));
    return out;
}

}  // namespace

TEST_CASE("init creates an empty repository once") {
    TempDir tmp;
    auto dir = tmp.path() / "repo";
    auto index = orbas::init_repository(dir);
    CHECK(index.entries.empty());
    CHECK(index.method_index.empty());
    CHECK(orbas::load(dir) == index);
    CHECK_THROWS_AS(orbas::init_repository(dir), orbas::RepositoryExists);
}

TEST_CASE("load of a missing repository is an I/O error") {
    TempDir tmp;
    CHECK_THROWS_AS(orbas::load(tmp.path()), orbas::IoError);
}

TEST_CASE("add, re-add and lookup") {
    TempDir tmp;
    write_file(tmp.path() / "Client.java", kClient);
    write_file(tmp.path() / "Empty.java", "");
    RepositoryIndex index;
    std::vector<fs::path> paths = {tmp.path() / "Client.java"};
    auto first = orbas::add_files(index, paths);
    REQUIRE(first.size() == 1);
    REQUIRE(first[0].id);
    CHECK(*first[0].id == "f000001");
    CHECK(ids_of(index, "close") == std::vector<std::string>{"f000001"});
    CHECK(ids_of(index, "Connection.close") == std::vector<std::string>{"f000001"});
    CHECK(ids_of(index, "java.sql.Connection.close") == std::vector<std::string>{"f000001"});
    CHECK(ids_of(index, "sql.Connection.close") == std::vector<std::string>{"f000001"});
    CHECK(ids_of(index, "nection.close").empty());
    CHECK(ids_of(index, "Socket.close").empty());

    auto again = orbas::add_files(index, paths);
    CHECK(added_ids(again) == added_ids(first));
    CHECK(index.entries.size() == 1);

    std::vector<fs::path> empty = {tmp.path() / "Empty.java"};
    auto e = orbas::add_files(index, empty);
    REQUIRE(e[0].id);
    CHECK(*e[0].id == "f000002");
    CHECK(index.find("f000002")->sequences.empty());
    CHECK(index.entries.size() == 2);
}

TEST_CASE("lookup on an empty repository and bad queries") {
    RepositoryIndex index;
    CHECK(orbas::lookup(index, "close").empty());
    CHECK_THROWS_AS(orbas::lookup(index, ""), orbas::InvalidArgument);
}

TEST_CASE("bare method keys span classes") {
    RepositoryIndex index;
    orbas::add_source(index, "a/Client.java", kClient);
    orbas::add_source(index, "b/Net.java", kSocket);
    CHECK(ids_of(index, "close") == std::vector<std::string>{"f000001", "f000002"});
    CHECK(ids_of(index, "Socket.close") == std::vector<std::string>{"f000002"});
}

TEST_CASE("remove by id or path") {
    RepositoryIndex index;
    auto f = orbas::add_source(index, "a/Client.java", kClient);
    auto g = orbas::add_source(index, "b/Net.java", kSocket);
    CHECK(orbas::remove_file(index, "f999999") == 0);
    CHECK(orbas::remove_file(index, f) == 1);
    CHECK(ids_of(index, "close") == std::vector<std::string>{g});
    CHECK(ids_of(index, "Connection.open").empty());
    CHECK(index.method_index.count("open") == 0);
    CHECK(index.method_index == orbas::rebuild_method_index(index.entries));
    CHECK(orbas::remove_file(index, "./b/Net.java") == 1);
    CHECK(index.entries.empty());
    CHECK(index.method_index.empty());
}

TEST_CASE("changed content is re-extracted under the same id") {
    RepositoryIndex index;
    auto id = orbas::add_source(index, "x/A.java", kClient);
    auto same = orbas::add_source(index, "x/A.java", kOther);
    CHECK(id == same);
    CHECK(index.entries.size() == 1);
    CHECK(ids_of(index, "Connection.open").empty());
    CHECK(ids_of(index, "Reader.read") == std::vector<std::string>{id});
    CHECK(index.entries[0].content_hash == orbas::sha256_hex(kOther));
}

TEST_CASE("unreadable paths fail individually") {
    TempDir tmp;
    write_file(tmp.path() / "Client.java", kClient);
    RepositoryIndex index;
    std::vector<fs::path> paths = {tmp.path() / "missing.java", tmp.path() / "Client.java", tmp.path()};
    auto out = orbas::add_files(index, paths);
    REQUIRE(out.size() == 3);
    CHECK(!out[0].id);
    CHECK(!out[0].error.empty());
    CHECK(out[1].id);
    CHECK(!out[2].id);
    CHECK(index.entries.size() == 1);
}

TEST_CASE("sha256 of known inputs") {
    CHECK(orbas::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(orbas::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("canonical serialization round-trips") {
    TempDir tmp;
    RepositoryIndex index;
    orbas::add_source(index, "a/Client.java", kClient);
    orbas::add_source(index, "b/Net.java", kSocket);
    orbas::add_source(index, "weird/<&\"q\">.java", "class Q { void m() { ghost.go(); } }");
    auto bytes = orbas::save(index, tmp.path());
    auto loaded = orbas::load(tmp.path());
    CHECK(loaded == index);
    CHECK(orbas::serialize(loaded) == bytes);
    CHECK(orbas::save(loaded, tmp.path()) == bytes);
    CHECK(orbas::testing::read_file(tmp.path() / "repo.xml") == bytes);
}

TEST_CASE("two-entry save matches the frozen golden") {
    RepositoryIndex index;
    auto tests_dir = orbas::testing::fixtures_dir().parent_path();
    for (const char* rel : {"fixtures/corpus/Client.java", "fixtures/corpus/Migration.java"})
        orbas::add_source(index, rel, orbas::testing::read_file(tests_dir / rel));
    auto golden = orbas::testing::read_file(orbas::testing::golden_dir() / "repo_two_entries.xml");
    CHECK(orbas::serialize(index) == golden);
    CHECK(orbas::parse_repository(golden) == index);
}

TEST_CASE("corrupt documents are rejected") {
    RepositoryIndex index;
    orbas::add_source(index, "a/Client.java", kClient);
    orbas::add_source(index, "b/Migration.java",
                      orbas::testing::read_file(orbas::testing::fixtures_dir() / "corpus" / "Migration.java"));
    const std::string good = orbas::serialize(index);
    REQUIRE_NOTHROW(orbas::parse_repository(good));

    auto replaced = [&](const std::string& from, const std::string& to) {
        std::string s = good;
        auto at = s.find(from);
        REQUIRE(at != std::string::npos);
        s.replace(at, from.size(), to);
        return s;
    };
    std::vector<std::string> bad = {
        "",
        good.substr(0, good.size() / 2),
        "<other/>",
        replaced("version=\"1\"", "version=\"2\""),
        replaced("id=\"f000002\"", "id=\"f000001\""),
        replaced("id=\"f000002\"", "id=\"x\""),
        replaced("path=\"b/Migration.java\"", "path=\"a/Client.java\""),
        replaced("sha256=\"", "sha256=\"zz"),
        replaced("<call i=\"1\"", "<call i=\"5\""),
        replaced("kind=\"skipped-method\"", "kind=\"exploded\""),
        replaced("line=\"9\"", "line=\"0\""),
        replaced("method=\"open\"", "method=\"\""),
        replaced("<method owner=\"Client\"", "<widget owner=\"Client\""),
        replaced("</file>", "stray text</file>"),
    };
    for (const auto& doc : bad) {
        CAPTURE(doc);
        CHECK_THROWS_AS(orbas::parse_repository(doc), orbas::RepositoryCorrupt);
    }

    TempDir tmp;
    write_file(tmp.path() / "repo.xml", good.substr(0, good.size() - 20));
    CHECK_THROWS_AS(orbas::load(tmp.path()), orbas::RepositoryCorrupt);
}

TEST_CASE("random corpora keep lookup and the index consistent") {
    std::mt19937 rng(5);
    const char* classes[] = {"Alpha", "Beta", "Gamma"};
    const char* methods[] = {"open", "close", "read", "write"};
    for (int trial = 0; trial < 20; ++trial) {
        RepositoryIndex index;
        std::vector<std::string> sources;
        for (int f = 0; f < 8; ++f) {
            std::string src = "import lib.Alpha; import lib.Beta; import other.Gamma;\nclass F" + std::to_string(f) + " {\n";
            src += "  Alpha a; Beta b; Gamma g;\n  void m() {\n";
            int calls = static_cast<int>(rng() % 4);
            const char* vars[] = {"a", "b", "g"};
            for (int c = 0; c < calls; ++c) {
                std::size_t k = rng() % 3;
                src += std::string("    ") + vars[k] + "." + methods[rng() % 4] + "();\n";
            }
            src += "  }\n}\n";
            sources.push_back(src);
            orbas::add_source(index, "src/F" + std::to_string(f) + ".java", src);
        }
        CHECK(index.method_index == orbas::rebuild_method_index(index.entries));
        for (const auto* cls : classes)
            for (const auto* m : methods) {
                std::string query = std::string(cls) + "." + m;
                std::set<std::string> expected;
                for (const auto& e : index.entries)
                    for (const auto& s : e.sequences)
                        for (const auto& c : s.calls)
                            if (c.qualified().ends_with("." + query)) expected.insert(e.id);
                auto got = ids_of(index, query);
                CHECK(std::set<std::string>(got.begin(), got.end()) == expected);
            }
        // Re-adding everything is a no-op.
        auto before = orbas::serialize(index);
        for (int f = 0; f < 8; ++f) orbas::add_source(index, "src/F" + std::to_string(f) + ".java", sources[static_cast<std::size_t>(f)]);
        CHECK(orbas::serialize(index) == before);
        // Removing a random file keeps the index consistent.
        orbas::remove_file(index, "f00000" + std::to_string(1 + rng() % 8));
        CHECK(index.method_index == orbas::rebuild_method_index(index.entries));
        CHECK(orbas::parse_repository(orbas::serialize(index)) == index);
    }
}
