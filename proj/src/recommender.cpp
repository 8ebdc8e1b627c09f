#include "orbas/recommender.hpp"

#include "orbas/clustering.hpp"
#include "orbas/error.hpp"
#include "orbas/similarity.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace orbas {

namespace {

bool representative_before(const Pattern& a, const Pattern& b) {
    if (a.calls.size() != b.calls.size()) return a.calls.size() > b.calls.size();
    if (a.support != b.support) return a.support > b.support;
    return a.calls < b.calls;
}

// Canonical order used to number patterns, so clustering ties do not depend
// on the order the miner runs produced them in.
bool canonical_before(const Pattern& a, const Pattern& b) {
    if (a.calls != b.calls) return a.calls < b.calls;
    if (a.support != b.support) return a.support > b.support;
    return a.supporting_ids < b.supporting_ids;
}

std::string pattern_id(std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "p%06zu", n);
    return buf;
}

}  // namespace

Pattern select_representative(std::span<const Pattern> members) {
    if (members.empty()) throw InvalidArgument("select_representative: empty group");
    return *std::min_element(members.begin(), members.end(), representative_before);
}

std::vector<PatternGroup> consolidate(std::span<const Pattern> patterns, Ratio tau2_sim) {
    if (tau2_sim < Ratio(0) || tau2_sim > Ratio(1)) throw InvalidArgument("consolidate: tau2_sim outside [0,1]");
    if (patterns.empty()) return {};

    std::vector<Pattern> ordered(patterns.begin(), patterns.end());
    std::sort(ordered.begin(), ordered.end(), canonical_before);
    std::vector<SequenceRecord> records;
    records.reserve(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (ordered[i].calls.empty()) throw InvalidArgument("consolidate: empty pattern");
        records.push_back({pattern_id(i), ordered[i].calls});
    }

    struct Working {
        std::vector<std::size_t> members;  // indices into ordered, ascending
        Pattern representative;
        NGramSet<ItemId> grams;
    };
    std::vector<Working> groups;
    for (const auto& cluster : cluster_sequences(records, Ratio(1) - tau2_sim)) {
        Working w;
        std::vector<Pattern> members;
        for (const auto& id : cluster.member_ids) {
            w.members.push_back(std::stoull(id.substr(1)));
            members.push_back(ordered[w.members.back()]);
        }
        w.representative = select_representative(members);
        w.grams = ngram_set(std::span<const ItemId>(w.representative.calls));
        groups.push_back(std::move(w));
    }

    // Complete linkage can leave two groups whose representatives are close
    // even though some members are far apart; fold those together.
    // sim[i][j] holds seqsim of live representatives i and j (i != j).
    const std::size_t g = groups.size();
    std::vector<std::vector<Ratio>> sim(g, std::vector<Ratio>(g, Ratio(0)));
    std::vector<bool> alive(g, true);
    auto fill_row = [&](std::size_t i) {
        for (std::size_t j = 0; j < g; ++j)
            if (j != i && alive[j]) sim[i][j] = sim[j][i] = seqsim(groups[i].grams, groups[j].grams);
    };
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i + 1; j < g; ++j) sim[i][j] = sim[j][i] = seqsim(groups[i].grams, groups[j].grams);
    for (;;) {
        std::size_t best_i = 0, best_j = 0;
        Ratio best_sim(-1);
        for (std::size_t i = 0; i < g; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = i + 1; j < g; ++j) {
                if (alive[j] && sim[i][j] >= tau2_sim && sim[i][j] > best_sim) {
                    best_sim = sim[i][j];
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_sim < Ratio(0)) break;
        auto& into = groups[best_i];
        auto& from = groups[best_j];
        std::vector<std::size_t> merged;
        std::merge(into.members.begin(), into.members.end(), from.members.begin(), from.members.end(),
                   std::back_inserter(merged));
        into.members = std::move(merged);
        std::vector<Pattern> members;
        for (auto idx : into.members) members.push_back(ordered[idx]);
        into.representative = select_representative(members);
        into.grams = ngram_set(std::span<const ItemId>(into.representative.calls));
        alive[best_j] = false;
        fill_row(best_i);
    }

    std::vector<PatternGroup> out;
    for (std::size_t i = 0; i < g; ++i) {
        if (!alive[i]) continue;
        PatternGroup group;
        for (auto idx : groups[i].members) group.members.push_back(ordered[idx]);
        group.representative = std::move(groups[i].representative);
        out.push_back(std::move(group));
    }
    std::sort(out.begin(), out.end(), [](const PatternGroup& a, const PatternGroup& b) {
        return representative_before(a.representative, b.representative);
    });
    return out;
}

std::vector<Recommendation> rank(std::span<const PatternGroup> groups, std::span<const MatchedSequence> matched) {
    std::vector<Recommendation> recs;
    recs.reserve(groups.size());
    for (const auto& g : groups) {
        Recommendation r;
        r.group = g;
        for (const auto& m : matched) {
            if (!is_subsequence(g.representative.calls, m.items)) continue;
            ++r.coverage_count;
            if (r.example_origins.size() < kMaxExamples &&
                std::find(r.example_origins.begin(), r.example_origins.end(), m.origin) == r.example_origins.end())
                r.example_origins.push_back(m.origin);
        }
        recs.push_back(std::move(r));
    }

    std::vector<Recommendation> kept;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& rep = recs[i].group.representative.calls;
        bool superfluous = false;
        for (std::size_t j = 0; j < recs.size() && !superfluous; ++j) {
            const auto& other = recs[j].group.representative.calls;
            superfluous = i != j && recs[i].coverage_count == recs[j].coverage_count && other.size() > rep.size() &&
                          is_subsequence(rep, other);
        }
        if (!superfluous) kept.push_back(recs[i]);
    }

    std::sort(kept.begin(), kept.end(), [](const Recommendation& a, const Recommendation& b) {
        if (a.coverage_count != b.coverage_count) return a.coverage_count > b.coverage_count;
        const auto& ra = a.group.representative.calls;
        const auto& rb = b.group.representative.calls;
        if (ra.size() != rb.size()) return ra.size() > rb.size();
        if (ra != rb) return ra < rb;
        return a.group.representative.support > b.group.representative.support;
    });
    for (std::size_t i = 0; i < kept.size(); ++i) kept[i].rank = i + 1;
    return kept;
}

}  // namespace orbas
