#include "test_support.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <unistd.h>

namespace fs = std::filesystem;

namespace orbas::testing {

ItemSeq items(std::string_view letters) { return ItemSeq(letters.begin(), letters.end()); }

std::vector<ItemSeq> item_list(std::initializer_list<std::string_view> words) {
    std::vector<ItemSeq> out;
    for (auto w : words) out.push_back(items(w));
    return out;
}

std::string letters(const ItemSeq& s) {
    std::string out;
    for (auto x : s) out.push_back(static_cast<char>(x));
    return out;
}

fs::path fixtures_dir() { return ORBAS_FIXTURES; }
fs::path golden_dir() { return ORBAS_GOLDEN; }

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, std::string_view bytes) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("orbas_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

ItemSeq random_items(std::mt19937& rng, int alphabet, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> sym(0, alphabet - 1);
    ItemSeq s(static_cast<std::size_t>(len(rng)));
    for (auto& x : s) x = 'a' + sym(rng);
    return s;
}

namespace {

// Small API vocabulary: each usage template is a plausible call protocol.
struct Api {
    const char* import;
    const char* type;
    const char* var;
    std::vector<std::vector<const char*>> protocols;
};

const std::vector<Api>& apis() {
    static const std::vector<Api> kApis = {
        {"java.sql.Connection", "Connection", "conn",
         {{"open", "prepareStatement", "commit", "close"},
          {"open", "createStatement", "close"},
          {"open", "setAutoCommit", "commit", "close"},
          {"open", "rollback", "close"}}},
        {"java.io.FileInputStream", "FileInputStream", "in", {{"read", "skip", "close"}, {"available", "read", "close"}}},
        {"java.net.Socket", "Socket", "sock",
         {{"connect", "getInputStream", "close"}, {"connect", "getOutputStream", "shutdownOutput", "close"}}},
        {"java.util.ArrayList", "ArrayList", "list", {{"add", "size", "clear"}, {"add", "get", "remove"}}},
        {"java.lang.StringBuilder", "StringBuilder", "sb", {{"append", "append", "toString"}, {"insert", "reverse", "toString"}}},
    };
    return kApis;
}

}  // namespace

std::vector<fs::path> generate_corpus(const fs::path& dir, std::size_t files, std::size_t methods, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<fs::path> out;
    const auto& api = apis();
    for (std::size_t f = 0; f < files; ++f) {
        std::string cls = "Gen" + std::to_string(f);
        std::string src = "package gen.p" + std::to_string(f % 17) + ";\n\n";
        for (const auto& a : api) src += std::string("import ") + a.import + ";\n";
        src += "\npublic class " + cls + " {\n";
        for (const auto& a : api) src += std::string("    private ") + a.type + " " + a.var + ";\n";
        for (std::size_t m = 0; m < methods; ++m) {
            src += "\n    public void m" + std::to_string(m) + "(String arg) {\n";
            std::size_t uses = 1 + rng() % 2;
            for (std::size_t u = 0; u < uses; ++u) {
                const auto& a = api[rng() % api.size()];
                const auto& proto = a.protocols[rng() % a.protocols.size()];
                for (const char* call : proto) {
                    if (rng() % 10 == 0) continue;  // occasional omission
                    src += std::string("        ") + a.var + "." + call + "(arg);\n";
                }
            }
            src += "    }\n";
        }
        src += "}\n";
        fs::path p = dir / (cls + ".java");
        write_file(p, src);
        out.push_back(p);
    }
    return out;
}

std::vector<fs::path> fixture_corpus() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fixtures_dir() / "corpus"))
        out.push_back(fs::path("fixtures/corpus") / e.path().filename());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace orbas::testing
