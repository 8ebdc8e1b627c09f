#include "orbas/search.hpp"

#include "orbas/clustering.hpp"
#include "orbas/error.hpp"
#include "orbas/miner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace orbas {

void validate(const SearchConfig& cfg) {
    if (cfg.min_sup <= 0 || cfg.min_sup > 1) throw InvalidArgument("--min-sup must be in (0,1]");
    if (cfg.tau1 < 0 || cfg.tau1 > 1) throw InvalidArgument("--tau1 must be in [0,1]");
    if (cfg.tau2_sim < 0 || cfg.tau2_sim > 1) throw InvalidArgument("--tau2 must be in [0,1]");
    if (cfg.top_k == 0) throw InvalidArgument("--top must be at least 1");
    if (cfg.min_pattern_length == 0) throw InvalidArgument("--min-len must be at least 1");
}

SearchResult search(const RepositoryIndex& index, std::string_view query, const SearchConfig& cfg) {
    validate(cfg);
    SearchResult result;
    result.query = std::string(query);
    result.config = cfg;

    std::vector<const CallSequence*> hits;
    std::vector<const FileEntry*> hit_files;
    for (const FileEntry& entry : lookup(index, query)) {
        for (const auto& seq : entry.sequences) {
            bool matches = std::any_of(seq.calls.begin(), seq.calls.end(),
                                       [&](const ApiCall& c) { return query_matches(query, c); });
            if (matches) {
                hits.push_back(&seq);
                hit_files.push_back(&entry);
            }
        }
    }
    if (hits.empty()) return result;

    std::set<ApiCall> calls;
    for (const auto* seq : hits) calls.insert(seq->calls.begin(), seq->calls.end());
    result.vocabulary.assign(calls.begin(), calls.end());
    std::map<ApiCall, ItemId> ids;
    std::vector<bool> query_item(result.vocabulary.size());
    for (std::size_t i = 0; i < result.vocabulary.size(); ++i) {
        ids.emplace(result.vocabulary[i], static_cast<ItemId>(i));
        query_item[i] = query_matches(query, result.vocabulary[i]);
    }

    std::vector<SequenceRecord> records;
    std::map<std::string, std::size_t> position;
    std::set<ItemSeq> distinct;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        ItemSeq items;
        for (const auto& c : hits[i]->calls) items.push_back(ids.at(c));
        distinct.insert(items);
        result.matched.push_back(
            {items, Origin{hit_files[i]->path, hits[i]->origin_owner, hits[i]->origin_method}});
        records.push_back({hits[i]->id, std::move(items)});
        position[hits[i]->id] = i;
    }
    result.distinct_matched = distinct.size();

    auto clusters = cluster_sequences(records, cfg.tau1);
    result.cluster_count = clusters.size();

    MiningConfig mining{cfg.min_sup, cfg.min_pattern_length};
    std::vector<Pattern> pooled;
    for (const auto& cluster : clusters) {
        std::vector<ItemSeq> members;
        std::vector<std::size_t> global;
        for (const auto& id : cluster.member_ids) {
            global.push_back(position.at(id));
            members.push_back(result.matched[global.back()].items);
        }
        for (auto& p : mine_closed(members, mining)) {
            bool relevant = std::any_of(p.calls.begin(), p.calls.end(),
                                        [&](ItemId item) { return query_item[static_cast<std::size_t>(item)]; });
            if (!relevant) continue;
            for (auto& s : p.supporting_ids) s = global[s];
            std::sort(p.supporting_ids.begin(), p.supporting_ids.end());
            pooled.push_back(std::move(p));
        }
    }

    auto groups = consolidate(pooled, cfg.tau2_sim);
    result.recommendations = rank(groups, result.matched);
    return result;
}

std::string decimal(const Ratio& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", to_double(r));
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

namespace {

std::string render_text(const SearchResult& result, std::size_t shown) {
    if (shown == 0) return "no patterns found\n";
    std::string out;
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& rec = result.recommendations[i];
        const auto& rep = rec.group.representative;
        out += "#" + std::to_string(rec.rank) + "  coverage " + std::to_string(rec.coverage_count) + "/" +
               std::to_string(result.matched.size()) + "  support " + decimal(rep.support) + "  merged " +
               std::to_string(rec.group.members.size()) + "\n";
        for (ItemId item : rep.calls)
            out += "    " + result.vocabulary[static_cast<std::size_t>(item)].qualified() + "\n";
        out += "  examples:\n";
        for (const auto& o : rec.example_origins) out += "    " + o.file + "  " + o.owner + "." + o.method + "\n";
    }
    return out;
}

std::string render_json(const SearchResult& result, std::size_t shown) {
    using nlohmann::ordered_json;
    const auto& cfg = result.config;
    ordered_json doc;
    doc["query"] = result.query;
    doc["config"] = {{"min_sup", to_double(cfg.min_sup)},
                     {"tau1", to_double(cfg.tau1)},
                     {"tau2", to_double(cfg.tau2_sim)},
                     {"top", cfg.top_k},
                     {"min_len", cfg.min_pattern_length},
                     {"min_sup_scope", "cluster"}};
    doc["matched_sequences"] = result.matched.size();
    doc["recommendations"] = ordered_json::array();
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& rec = result.recommendations[i];
        const auto& rep = rec.group.representative;
        ordered_json item;
        item["rank"] = rec.rank;
        item["coverage"] = rec.coverage_count;
        item["support"] = to_double(rep.support);
        item["calls"] = ordered_json::array();
        for (ItemId id : rep.calls) item["calls"].push_back(result.vocabulary[static_cast<std::size_t>(id)].qualified());
        item["merged_count"] = rec.group.members.size();
        item["examples"] = ordered_json::array();
        for (const auto& o : rec.example_origins)
            item["examples"].push_back({{"file", o.file}, {"owner", o.owner}, {"method", o.method}});
        doc["recommendations"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render(const SearchResult& result, OutputFormat format) {
    std::size_t shown = std::min(result.recommendations.size(), result.config.top_k);
    return format == OutputFormat::Json ? render_json(result, shown) : render_text(result, shown);
}

}  // namespace orbas
