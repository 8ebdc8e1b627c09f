#include "orbas/cli.hpp"

#include "orbas/error.hpp"
#include "orbas/repository.hpp"
#include "orbas/search.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <ostream>

namespace fs = std::filesystem;

namespace orbas {

namespace {

struct Invocation {
    std::vector<std::string> positionals;
    std::string min_sup = "0.5";
    std::string tau1 = "0.7";
    std::string tau2 = "0.15";
    std::size_t top = 10;
    std::size_t min_len = 2;
    std::string format = "text";
};

std::optional<fs::path> env_repo() {
    const char* v = std::getenv("ORBAS_REPO");
    if (!v || !*v) return std::nullopt;
    return fs::path(v);
}

bool is_repository(const fs::path& p) {
    std::error_code ec;
    return fs::is_regular_file(p / kRepositoryFileName, ec);
}

// Splits positionals into (repository dir, operands) for a command taking
// `operands` trailing arguments; the directory comes first or from $ORBAS_REPO.
std::pair<fs::path, std::vector<std::string>> split_repo(const std::vector<std::string>& pos, std::size_t operands) {
    if (pos.size() == operands + 1) return {fs::path(pos.front()), {pos.begin() + 1, pos.end()}};
    if (pos.size() == operands) {
        if (auto env = env_repo()) return {*env, pos};
        throw InvalidArgument("no repository directory given and ORBAS_REPO is not set");
    }
    throw InvalidArgument("wrong number of arguments");
}

std::vector<fs::path> expand_sources(const std::vector<std::string>& operands) {
    std::vector<fs::path> out;
    for (const auto& op : operands) {
        fs::path p(op);
        std::error_code ec;
        if (!fs::is_directory(p, ec)) {
            out.push_back(p);
            continue;
        }
        std::vector<fs::path> found;
        for (fs::recursive_directory_iterator it(p, ec), end; !ec && it != end; it.increment(ec))
            if (it->is_regular_file(ec) && it->path().extension() == ".java") found.push_back(it->path());
        std::sort(found.begin(), found.end());
        out.insert(out.end(), found.begin(), found.end());
    }
    return out;
}

int cmd_init(const Invocation& inv, std::ostream& out) {
    fs::path dir;
    if (inv.positionals.size() == 1) {
        dir = inv.positionals.front();
    } else if (inv.positionals.empty()) {
        auto env = env_repo();
        if (!env) throw InvalidArgument("no repository directory given and ORBAS_REPO is not set");
        dir = *env;
    } else {
        throw InvalidArgument("init takes at most one directory");
    }
    init_repository(dir);
    out << "initialized " << normalize_path(dir / kRepositoryFileName) << "\n";
    return kExitOk;
}

int cmd_add(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const auto& pos = inv.positionals;
    if (pos.empty()) throw InvalidArgument("add needs at least one path");
    fs::path dir;
    std::vector<std::string> operands;
    if (pos.size() >= 2 && is_repository(pos.front())) {
        dir = pos.front();
        operands.assign(pos.begin() + 1, pos.end());
    } else if (auto env = env_repo()) {
        dir = *env;
        operands = pos;
    } else if (pos.size() >= 2) {
        dir = pos.front();
        operands.assign(pos.begin() + 1, pos.end());
    } else {
        throw InvalidArgument("no repository directory given and ORBAS_REPO is not set");
    }

    auto index = load(dir);
    auto sources = expand_sources(operands);
    int code = kExitOk;
    for (const auto& outcome : add_files(index, sources)) {
        if (outcome.id) {
            out << *outcome.id << "\t" << outcome.path << "\n";
        } else {
            err << "orbas: " << outcome.error << "\n";
            code = kExitIo;
        }
    }
    save(index, dir);
    return code;
}

int cmd_remove(const Invocation& inv, std::ostream& out) {
    auto [dir, operands] = split_repo(inv.positionals, 1);
    auto index = load(dir);
    auto removed = remove_file(index, operands.front());
    if (removed > 0) save(index, dir);
    out << "removed " << removed << "\n";
    return kExitOk;
}

int cmd_stats(const Invocation& inv, std::ostream& out) {
    auto [dir, operands] = split_repo(inv.positionals, 0);
    auto index = load(dir);
    std::size_t sequences = 0;
    for (const auto& e : index.entries) sequences += e.sequences.size();
    out << "entries: " << index.entries.size() << "\n"
        << "sequences: " << sequences << "\n"
        << "method keys: " << index.method_index.size() << "\n";
    return kExitOk;
}

int cmd_search(const Invocation& inv, std::ostream& out) {
    auto [dir, operands] = split_repo(inv.positionals, 1);
    SearchConfig cfg;
    cfg.min_sup = parse_unit_ratio(inv.min_sup);
    cfg.tau1 = parse_unit_ratio(inv.tau1);
    cfg.tau2_sim = parse_unit_ratio(inv.tau2);
    cfg.top_k = inv.top;
    cfg.min_pattern_length = inv.min_len;
    if (inv.format == "json") {
        cfg.format = OutputFormat::Json;
    } else if (inv.format != "text") {
        throw InvalidArgument("--format must be text or json");
    }
    validate(cfg);
    if (operands.front().empty()) throw InvalidArgument("empty query");

    auto index = load(dir);
    out << render(search(index, operands.front(), cfg), cfg.format);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Offline API usage pattern search", "orbas"};
    app.require_subcommand(1);
    Invocation inv;

    auto* init = app.add_subcommand("init", "Create an empty repository");
    init->add_option("dir", inv.positionals, "Repository directory");
    auto* add = app.add_subcommand("add", "Extract and index source files (directories are searched for .java)");
    add->add_option("args", inv.positionals, "[DIR] PATH...")->required();
    auto* remove = app.add_subcommand("remove", "Remove a file by id or path");
    remove->add_option("args", inv.positionals, "[DIR] SELECTOR")->required();
    auto* stats = app.add_subcommand("stats", "Print entry, sequence and method-key counts");
    stats->add_option("dir", inv.positionals, "Repository directory");
    auto* search_cmd = app.add_subcommand("search", "Mine and rank usage patterns for a method");
    search_cmd->add_option("args", inv.positionals, "[DIR] QUERY")->required();
    search_cmd->add_option("--min-sup", inv.min_sup, "Minimum support within a cluster")->capture_default_str();
    search_cmd->add_option("--tau1", inv.tau1, "Stage-1 clustering distance threshold")->capture_default_str();
    search_cmd->add_option("--tau2", inv.tau2, "Stage-2 similarity threshold")->capture_default_str();
    search_cmd->add_option("--top", inv.top, "Recommendations shown")->capture_default_str();
    search_cmd->add_option("--min-len", inv.min_len, "Minimum pattern length")->capture_default_str();
    search_cmd->add_option("--format", inv.format, "text or json")->capture_default_str();

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("orbas");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (init->parsed()) return cmd_init(inv, out);
        if (add->parsed()) return cmd_add(inv, out, err);
        if (remove->parsed()) return cmd_remove(inv, out);
        if (stats->parsed()) return cmd_stats(inv, out);
        if (search_cmd->parsed()) return cmd_search(inv, out);
    } catch (const InvalidArgument& e) {
        err << "orbas: " << e.what() << "\n";
        return kExitUsage;
    } catch (const RepositoryExists& e) {
        err << "orbas: " << e.what() << "\n";
        return kExitUsage;
    } catch (const RepositoryCorrupt& e) {
        err << "orbas: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const IoError& e) {
        err << "orbas: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace orbas
