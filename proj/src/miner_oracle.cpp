// Exhaustive closed-sequence enumeration, kept free of the BIDE code paths so
// the two can be checked against each other.

#include "orbas/error.hpp"
#include "orbas/miner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbas {

namespace {

bool contains_gapped(const ItemSeq& needle, const ItemSeq& hay) {
    auto it = hay.begin();
    for (ItemId x : needle) {
        it = std::find(it, hay.end(), x);
        if (it == hay.end()) return false;
        ++it;
    }
    return true;
}

std::set<ItemSeq> distinct_subsequences(const ItemSeq& s) {
    std::set<ItemSeq> all;
    for (ItemId x : s) {
        std::vector<ItemSeq> grown;
        grown.reserve(all.size() + 1);
        for (const auto& sub : all) {
            auto g = sub;
            g.push_back(x);
            grown.push_back(std::move(g));
        }
        grown.push_back(ItemSeq{x});
        all.insert(grown.begin(), grown.end());
    }
    return all;
}

}  // namespace

std::vector<Pattern> oracle_closed(std::span<const ItemSeq> sequences, const MiningConfig& cfg) {
    validate(cfg);
    std::size_t total = 0;
    std::set<ItemId> alphabet;
    for (const auto& s : sequences) {
        total += s.size();
        alphabet.insert(s.begin(), s.end());
    }
    if (total > 48 || alphabet.size() > 8)
        throw InstanceTooLarge("oracle_closed: instance exceeds 48 items or 8 symbols");
    if (sequences.empty()) return {};

    std::set<ItemSeq> candidates;
    for (const auto& s : sequences) {
        auto subs = distinct_subsequences(s);
        candidates.insert(subs.begin(), subs.end());
    }

    const auto n = static_cast<std::int64_t>(sequences.size());
    std::map<ItemSeq, std::vector<std::size_t>> frequent;
    for (const auto& c : candidates) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < sequences.size(); ++i)
            if (contains_gapped(c, sequences[i])) hits.push_back(i);
        if (Ratio(static_cast<std::int64_t>(hits.size()), n) >= cfg.min_sup) frequent.emplace(c, std::move(hits));
    }

    std::vector<Pattern> out;
    for (const auto& [p, hits] : frequent) {
        if (p.size() < cfg.min_pattern_length) continue;
        bool closed = true;
        for (const auto& [q, q_hits] : frequent) {
            if (q.size() > p.size() && q_hits.size() == hits.size() && contains_gapped(p, q)) {
                closed = false;
                break;
            }
        }
        if (closed) out.push_back(Pattern{p, Ratio(static_cast<std::int64_t>(hits.size()), n), hits});
    }
    std::sort(out.begin(), out.end(), pattern_order);
    return out;
}

}  // namespace orbas
