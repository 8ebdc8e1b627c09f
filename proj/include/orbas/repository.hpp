#pragma once

// Offline repository: source files, their cached call sequences, and an
// inverted index from method keys to file ids, persisted as repo.xml.

#include "orbas/api_call.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orbas {

inline constexpr std::string_view kRepositoryFileName = "repo.xml";
inline constexpr int kRepositoryVersion = 1;

struct FileEntry {
    std::string id;
    std::string path;
    std::string content_hash;  // lowercase hex SHA-256 of the file bytes
    std::vector<CallSequence> sequences;
    std::vector<ExtractionDiagnostic> diagnostics;

    friend bool operator==(const FileEntry&, const FileEntry&) = default;
};

using MethodIndex = std::map<std::string, std::set<std::string>>;

struct RepositoryIndex {
    int version = kRepositoryVersion;
    /// Sorted by id.
    std::vector<FileEntry> entries;
    /// Method key ("pkg.C.m", "C.m", "m") -> ids of files calling it.
    MethodIndex method_index;

    const FileEntry* find(std::string_view id) const;

    friend bool operator==(const RepositoryIndex&, const RepositoryIndex&) = default;
};

struct AddOutcome {
    std::string path;
    std::optional<std::string> id;  // empty on failure
    std::string error;
};

/// Creates `directory` if needed and writes an empty repository there.
/// Throws RepositoryExists or IoError.
RepositoryIndex init_repository(const std::filesystem::path& directory);

/// Reads, hashes and extracts each path. Unchanged content at a known path
/// keeps its entry; changed content is re-extracted under the same id.
/// Failures are reported per path and do not stop the others.
std::vector<AddOutcome> add_files(RepositoryIndex& index, std::span<const std::filesystem::path> paths);

/// Adds already-read bytes; the building block of add_files.
std::string add_source(RepositoryIndex& index, std::string_view path, std::string_view bytes);

/// Removes the entry whose id or stored path equals selector. Returns 0 or 1.
std::size_t remove_file(RepositoryIndex& index, std::string_view selector);

/// Entries with at least one cached call matching query under segment-suffix
/// matching, ordered by id. Throws InvalidArgument on an empty query.
std::vector<std::reference_wrapper<const FileEntry>> lookup(const RepositoryIndex& index, std::string_view query);

/// Method index recomputed from the cached sequences.
MethodIndex rebuild_method_index(std::span<const FileEntry> entries);

/// Canonical XML document for the index.
std::string serialize(const RepositoryIndex& index);

/// Parses and validates a repository document. Throws RepositoryCorrupt.
RepositoryIndex parse_repository(std::string_view xml);

/// Writes repo.xml atomically and returns the bytes written. Throws IoError.
std::string save(const RepositoryIndex& index, const std::filesystem::path& directory);

/// Throws IoError when repo.xml is missing or unreadable, RepositoryCorrupt
/// when it does not validate.
RepositoryIndex load(const std::filesystem::path& directory);

std::string sha256_hex(std::string_view bytes);

/// Lexically normalized, '/'-separated form under which paths are stored.
std::string normalize_path(const std::filesystem::path& p);

}  // namespace orbas
