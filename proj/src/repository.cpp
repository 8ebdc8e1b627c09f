#include "orbas/repository.hpp"

#include "orbas/error.hpp"
#include "orbas/extractor.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace orbas {

const FileEntry* RepositoryIndex::find(std::string_view id) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), id,
                               [](const FileEntry& e, std::string_view key) { return e.id < key; });
    return it != entries.end() && it->id == id ? &*it : nullptr;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 digest failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

std::string normalize_path(const fs::path& p) { return p.lexically_normal().generic_string(); }

namespace {

std::string format_id(std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "f%06zu", n);
    return buf;
}

bool valid_id(std::string_view id) {
    return id.size() >= 7 && id[0] == 'f' &&
           std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string next_id(const RepositoryIndex& index) {
    std::size_t highest = 0;
    for (const auto& e : index.entries) highest = std::max<std::size_t>(highest, std::stoull(e.id.substr(1)));
    return format_id(highest + 1);
}

void index_entry(MethodIndex& index, const FileEntry& entry) {
    for (const auto& seq : entry.sequences)
        for (const auto& call : seq.calls)
            for (auto& key : method_keys(call)) index[std::move(key)].insert(entry.id);
}

void unindex_entry(MethodIndex& index, const FileEntry& entry) {
    for (const auto& seq : entry.sequences)
        for (const auto& call : seq.calls)
            for (const auto& key : method_keys(call)) {
                auto it = index.find(key);
                if (it == index.end()) continue;
                it->second.erase(entry.id);
                if (it->second.empty()) index.erase(it);
            }
}

std::string read_bytes(const fs::path& p) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) throw IoError("is a directory: " + p.string());
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + p.string());
    return bytes;
}

void append_escaped(std::string& out, std::string_view value) {
    for (unsigned char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default:
            if (c < 0x20) {
                out += "&#" + std::to_string(c) + ";";
            } else {
                out.push_back(static_cast<char>(c));
            }
        }
    }
}

struct Attr {
    std::string_view name;
    std::string_view value;
};

void open_tag(std::string& out, int indent, std::string_view tag, std::initializer_list<Attr> attrs) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += '<';
    out += tag;
    for (const auto& a : attrs) {
        out += ' ';
        out += a.name;
        out += "=\"";
        append_escaped(out, a.value);
        out += '"';
    }
}

[[noreturn]] void corrupt(const std::string& why) { throw RepositoryCorrupt("repository corrupt: " + why); }

const pt::ptree& attributes(const pt::ptree& node) {
    static const pt::ptree kEmpty;
    auto it = node.find("<xmlattr>");
    return it == node.not_found() ? kEmpty : it->second;
}

std::string required_attr(const pt::ptree& node, std::string_view element, const char* name) {
    const auto& attrs = attributes(node);
    auto it = attrs.find(name);
    if (it == attrs.not_found()) corrupt("<" + std::string(element) + "> lacks attribute '" + name + "'");
    std::string value = it->second.data();
    if (value.empty()) corrupt("<" + std::string(element) + "> has empty attribute '" + name + "'");
    return value;
}

std::uint64_t parse_count(const std::string& text, std::string_view what) {
    if (text.empty() || text.size() > 9 || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        corrupt("bad " + std::string(what) + " '" + text + "'");
    return std::stoull(text);
}

void reject_text(const pt::ptree& node, std::string_view element) {
    const auto& text = node.data();
    if (!std::all_of(text.begin(), text.end(), [](unsigned char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }))
        corrupt("unexpected text inside <" + std::string(element) + ">");
}

FileEntry parse_file(const pt::ptree& node) {
    reject_text(node, "file");
    FileEntry entry;
    entry.id = required_attr(node, "file", "id");
    entry.path = required_attr(node, "file", "path");
    entry.content_hash = required_attr(node, "file", "sha256");
    if (!valid_id(entry.id)) corrupt("bad file id '" + entry.id + "'");
    if (entry.content_hash.size() != 64 ||
        !std::all_of(entry.content_hash.begin(), entry.content_hash.end(),
                     [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); }))
        corrupt("bad sha256 for " + entry.id);

    for (const auto& [tag, child] : node) {
        if (tag == "<xmlattr>") continue;
        if (tag == "method") {
            reject_text(child, "method");
            CallSequence seq;
            seq.id = entry.id + "#" + std::to_string(entry.sequences.size());
            seq.origin_owner = required_attr(child, "method", "owner");
            seq.origin_method = required_attr(child, "method", "name");
            seq.origin_file = entry.id;
            for (const auto& [ctag, call] : child) {
                if (ctag == "<xmlattr>") continue;
                if (ctag != "call") corrupt("unexpected <" + ctag + "> in <method>");
                reject_text(call, "call");
                if (parse_count(required_attr(call, "call", "i"), "call index") != seq.calls.size())
                    corrupt("call indices out of order in " + entry.id);
                seq.calls.push_back({required_attr(call, "call", "class"), required_attr(call, "call", "method")});
            }
            if (seq.calls.empty()) corrupt("empty <method> in " + entry.id);
            entry.sequences.push_back(std::move(seq));
        } else if (tag == "diag") {
            reject_text(child, "diag");
            ExtractionDiagnostic d;
            auto line = parse_count(required_attr(child, "diag", "line"), "diag line");
            if (line == 0) corrupt("diag line 0 in " + entry.id);
            d.line = static_cast<std::uint32_t>(line);
            if (!parse_diagnostic_kind(required_attr(child, "diag", "kind"), d.kind))
                corrupt("unknown diag kind in " + entry.id);
            entry.diagnostics.push_back(d);
        } else {
            corrupt("unexpected <" + tag + "> in <file>");
        }
    }
    return entry;
}

}  // namespace

std::string add_source(RepositoryIndex& index, std::string_view path, std::string_view bytes) {
    std::string stored = normalize_path(fs::path(path));
    std::string hash = sha256_hex(bytes);
    auto existing = std::find_if(index.entries.begin(), index.entries.end(),
                                 [&](const FileEntry& e) { return e.path == stored; });
    if (existing != index.entries.end() && existing->content_hash == hash) return existing->id;

    FileEntry entry;
    entry.id = existing != index.entries.end() ? existing->id : next_id(index);
    entry.path = stored;
    entry.content_hash = std::move(hash);
    auto extracted = extract_file(bytes, entry.id);
    entry.sequences = std::move(extracted.sequences);
    entry.diagnostics = std::move(extracted.diagnostics);

    if (existing != index.entries.end()) {
        unindex_entry(index.method_index, *existing);
        *existing = std::move(entry);
        index_entry(index.method_index, *existing);
        return existing->id;
    }
    index_entry(index.method_index, entry);
    auto pos = std::lower_bound(index.entries.begin(), index.entries.end(), entry.id,
                                [](const FileEntry& e, const std::string& id) { return e.id < id; });
    return index.entries.insert(pos, std::move(entry))->id;
}

std::vector<AddOutcome> add_files(RepositoryIndex& index, std::span<const fs::path> paths) {
    std::vector<AddOutcome> out;
    out.reserve(paths.size());
    for (const auto& p : paths) {
        AddOutcome outcome{normalize_path(p), std::nullopt, {}};
        try {
            outcome.id = add_source(index, outcome.path, read_bytes(p));
        } catch (const IoError& e) {
            outcome.error = e.what();
        }
        out.push_back(std::move(outcome));
    }
    return out;
}

std::size_t remove_file(RepositoryIndex& index, std::string_view selector) {
    auto it = std::find_if(index.entries.begin(), index.entries.end(), [&](const FileEntry& e) {
        return e.id == selector || e.path == selector;
    });
    if (it == index.entries.end()) {
        std::string normalized = normalize_path(fs::path(selector));
        it = std::find_if(index.entries.begin(), index.entries.end(),
                          [&](const FileEntry& e) { return e.path == normalized; });
    }
    if (it == index.entries.end()) return 0;
    unindex_entry(index.method_index, *it);
    index.entries.erase(it);
    return 1;
}

std::vector<std::reference_wrapper<const FileEntry>> lookup(const RepositoryIndex& index, std::string_view query) {
    if (query.empty()) throw InvalidArgument("lookup: empty query");
    // Every call is filed under its bare method name, so that key bounds the candidates.
    auto dot = query.rfind('.');
    std::string bare(dot == std::string_view::npos ? query : query.substr(dot + 1));
    std::vector<std::reference_wrapper<const FileEntry>> out;
    auto it = index.method_index.find(bare);
    if (it == index.method_index.end()) return out;
    for (const auto& id : it->second) {
        const FileEntry* entry = index.find(id);
        if (!entry) continue;
        bool hit = std::any_of(entry->sequences.begin(), entry->sequences.end(), [&](const CallSequence& s) {
            return std::any_of(s.calls.begin(), s.calls.end(), [&](const ApiCall& c) { return query_matches(query, c); });
        });
        if (hit) out.emplace_back(*entry);
    }
    return out;
}

MethodIndex rebuild_method_index(std::span<const FileEntry> entries) {
    MethodIndex index;
    for (const auto& e : entries) index_entry(index, e);
    return index;
}

std::string serialize(const RepositoryIndex& index) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::string version = std::to_string(index.version);
    open_tag(out, 0, "repository", {{"version", version}});
    out += ">\n";
    for (const auto& e : index.entries) {
        open_tag(out, 1, "file", {{"id", e.id}, {"path", e.path}, {"sha256", e.content_hash}});
        if (e.sequences.empty() && e.diagnostics.empty()) {
            out += "/>\n";
            continue;
        }
        out += ">\n";
        for (const auto& seq : e.sequences) {
            open_tag(out, 2, "method", {{"owner", seq.origin_owner}, {"name", seq.origin_method}});
            out += ">\n";
            for (std::size_t i = 0; i < seq.calls.size(); ++i) {
                std::string idx = std::to_string(i);
                open_tag(out, 3, "call",
                         {{"i", idx}, {"class", seq.calls[i].class_name}, {"method", seq.calls[i].method_name}});
                out += "/>\n";
            }
            out += "    </method>\n";
        }
        for (const auto& d : e.diagnostics) {
            std::string line = std::to_string(d.line);
            open_tag(out, 2, "diag", {{"line", line}, {"kind", to_string(d.kind)}});
            out += "/>\n";
        }
        out += "  </file>\n";
    }
    out += "</repository>\n";
    return out;
}

RepositoryIndex parse_repository(std::string_view xml) {
    pt::ptree doc;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, doc);
    } catch (const pt::ptree_error& e) {
        corrupt(e.what());
    }

    if (doc.size() != 1 || doc.begin()->first != "repository") corrupt("root element must be <repository>");
    const pt::ptree& root = doc.begin()->second;
    reject_text(root, "repository");

    RepositoryIndex index;
    auto version = parse_count(required_attr(root, "repository", "version"), "version");
    if (version != static_cast<std::uint64_t>(kRepositoryVersion))
        corrupt("unsupported version " + std::to_string(version));
    for (const auto& [tag, child] : root) {
        if (tag == "<xmlattr>") continue;
        if (tag != "file") corrupt("unexpected <" + tag + "> in <repository>");
        index.entries.push_back(parse_file(child));
    }
    std::sort(index.entries.begin(), index.entries.end(),
              [](const FileEntry& a, const FileEntry& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < index.entries.size(); ++i)
        if (index.entries[i].id == index.entries[i - 1].id) corrupt("duplicate file id " + index.entries[i].id);
    std::set<std::string> paths;
    for (const auto& e : index.entries)
        if (!paths.insert(e.path).second) corrupt("duplicate path " + e.path);
    index.method_index = rebuild_method_index(index.entries);
    return index;
}

RepositoryIndex init_repository(const fs::path& directory) {
    std::error_code ec;
    if (fs::exists(directory / kRepositoryFileName, ec))
        throw RepositoryExists("repository already exists in " + directory.string());
    fs::create_directories(directory, ec);
    if (ec) throw IoError("cannot create " + directory.string() + ": " + ec.message());
    RepositoryIndex index;
    save(index, directory);
    return index;
}

std::string save(const RepositoryIndex& index, const fs::path& directory) {
    std::string bytes = serialize(index);
    fs::path target = directory / kRepositoryFileName;
    fs::path tmp = directory / (std::string(kRepositoryFileName) + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot replace " + target.string() + ": " + ec.message());
    return bytes;
}

RepositoryIndex load(const fs::path& directory) {
    fs::path target = directory / kRepositoryFileName;
    std::error_code ec;
    if (!fs::exists(target, ec)) throw IoError("no repository at " + directory.string());
    return parse_repository(read_bytes(target));
}

}  // namespace orbas
