#include "orbas/clustering.hpp"

#include "orbas/error.hpp"
#include "orbas/similarity.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

namespace orbas {

void DistanceTable::set(const std::string& a, const std::string& b, Ratio d) {
    table_[std::minmax(a, b)] = d;
}

Ratio DistanceTable::get(const std::string& a, const std::string& b) const {
    if (a == b) return Ratio(0);
    auto it = table_.find(std::minmax(a, b));
    if (it == table_.end()) throw InvalidArgument("distance table has no entry for (" + a + ", " + b + ")");
    return it->second;
}

Ratio complete_linkage(const Cluster& c1, const Cluster& c2, const DistanceTable& dist) {
    if (c1.member_ids.empty() || c2.member_ids.empty())
        throw InvalidArgument("complete_linkage: empty cluster");
    Ratio worst(0);
    for (const auto& a : c1.member_ids)
        for (const auto& b : c2.member_ids) worst = std::max(worst, dist.get(a, b));
    return worst;
}

Ratio sequence_distance(std::span<const ItemId> a, std::span<const ItemId> b) {
    return Ratio(1) - seqsim(a, b);
}

namespace {

// Lexicographic comparison of sorted(a ∪ b) against sorted(c ∪ d), all inputs
// sorted and pairwise disjoint.
class MergedView {
public:
    MergedView(const std::vector<std::string>& a, const std::vector<std::string>& b) : a_(a), b_(b) {}

    const std::string* next() {
        if (ia_ < a_.size() && (ib_ >= b_.size() || a_[ia_] < b_[ib_])) return &a_[ia_++];
        if (ib_ < b_.size()) return &b_[ib_++];
        return nullptr;
    }

private:
    const std::vector<std::string>& a_;
    const std::vector<std::string>& b_;
    std::size_t ia_ = 0;
    std::size_t ib_ = 0;
};

bool merged_less(const std::vector<std::string>& a, const std::vector<std::string>& b,
                 const std::vector<std::string>& c, const std::vector<std::string>& d) {
    MergedView left(a, b);
    MergedView right(c, d);
    for (;;) {
        const std::string* x = left.next();
        const std::string* y = right.next();
        if (!x || !y) return !x && y;
        if (*x != *y) return *x < *y;
    }
}

// Gram sets over one interned vocabulary: sorted gram ids plus total weight.
struct InternedGrams {
    std::vector<std::uint32_t> ids;
    std::int64_t weight = 0;
};

class GramInterner {
public:
    InternedGrams intern(const ItemSeq& seq) {
        InternedGrams out;
        for (const auto& g : ngram_set(std::span<const ItemId>(seq))) {
            auto [it, fresh] = ids_.try_emplace(g, static_cast<std::uint32_t>(weights_.size()));
            if (fresh) weights_.push_back(static_cast<std::int64_t>(g.size()));
            out.ids.push_back(it->second);
            out.weight += static_cast<std::int64_t>(g.size());
        }
        std::sort(out.ids.begin(), out.ids.end());
        return out;
    }

    std::int64_t common_weight(const InternedGrams& a, const InternedGrams& b) const {
        std::int64_t common = 0;
        auto ia = a.ids.begin();
        auto ib = b.ids.begin();
        while (ia != a.ids.end() && ib != b.ids.end()) {
            if (*ia < *ib) {
                ++ia;
            } else if (*ib < *ia) {
                ++ib;
            } else {
                common += weights_[*ia];
                ++ia;
                ++ib;
            }
        }
        return common;
    }

private:
    std::map<Gram<ItemId>, std::uint32_t> ids_;
    std::vector<std::int64_t> weights_;
};

// Stands for any linkage above tau; such pairs can never merge.
const Ratio kApart(2);

}  // namespace

std::vector<Cluster> cluster_sequences(std::span<const SequenceRecord> items, Ratio tau) {
    if (items.empty()) throw InvalidArgument("cluster_sequences: empty input");
    if (tau < Ratio(0) || tau > Ratio(1)) throw InvalidArgument("cluster_sequences: tau outside [0,1]");

    // Identical sequences are at distance 0 and always merge first, so they
    // start out as one cluster.
    std::map<ItemSeq, std::vector<std::string>> groups;
    std::set<std::string> seen;
    for (const auto& rec : items) {
        if (rec.items.empty()) throw InvalidArgument("cluster_sequences: empty sequence '" + rec.id + "'");
        if (!seen.insert(rec.id).second) throw InvalidArgument("cluster_sequences: duplicate id '" + rec.id + "'");
        groups[rec.items].push_back(rec.id);
    }

    GramInterner interner;
    struct Active {
        std::vector<std::string> ids;
        InternedGrams grams;
        bool alive = true;
    };
    std::vector<Active> active;
    active.reserve(groups.size());
    for (auto& [seq, ids] : groups) {
        std::sort(ids.begin(), ids.end());
        active.push_back({std::move(ids), interner.intern(seq), true});
    }
    // Order by smallest id so indices do not depend on sequence content order.
    std::sort(active.begin(), active.end(),
              [](const Active& x, const Active& y) { return x.ids.front() < y.ids.front(); });

    // similarity <= min(w)/max(w), so a weight ratio below 1 - tau rules a pair out.
    const Ratio min_sim = Ratio(1) - tau;
    const std::size_t m = active.size();
    std::vector<Ratio> linkage(m * m, kApart);
    for (std::size_t i = 0; i < m; ++i) {
        linkage[i * m + i] = Ratio(0);
        for (std::size_t j = i + 1; j < m; ++j) {
            std::int64_t wi = active[i].grams.weight;
            std::int64_t wj = active[j].grams.weight;
            if (Ratio(std::min(wi, wj), std::max(wi, wj)) < min_sim) continue;
            std::int64_t common = interner.common_weight(active[i].grams, active[j].grams);
            Ratio d = Ratio(1) - Ratio(common, wi + wj - common);
            if (d > tau) continue;
            linkage[i * m + j] = d;
            linkage[j * m + i] = d;
        }
    }

    auto better = [&](std::size_t i, std::size_t j, std::size_t bi, std::size_t bj) {
        const Ratio& d = linkage[i * m + j];
        const Ratio& bd = linkage[bi * m + bj];
        if (d != bd) return d < bd;
        return merged_less(active[i].ids, active[j].ids, active[bi].ids, active[bj].ids);
    };
    // best[i]: partner minimizing (linkage, merged ids) among mergeable clusters, or m.
    std::vector<std::size_t> best(m, m);
    auto refresh = [&](std::size_t i) {
        best[i] = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i || !active[j].alive || linkage[i * m + j] > tau) continue;
            if (best[i] == m || better(i, j, i, best[i])) best[i] = j;
        }
    };
    for (std::size_t i = 0; i < m; ++i) refresh(i);

    for (;;) {
        std::size_t bi = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (!active[i].alive || best[i] == m) continue;
            if (bi == m || better(i, best[i], bi, best[bi])) bi = i;
        }
        if (bi == m) break;

        std::size_t keep = std::min(bi, best[bi]);
        std::size_t drop = std::max(bi, best[bi]);
        auto& into = active[keep].ids;
        auto& from = active[drop].ids;
        std::vector<std::string> merged;
        merged.reserve(into.size() + from.size());
        std::merge(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(merged));
        into = std::move(merged);
        from.clear();
        active[drop].alive = false;
        for (std::size_t k = 0; k < m; ++k) {
            if (!active[k].alive || k == keep) continue;
            Ratio d = std::max(linkage[keep * m + k], linkage[drop * m + k]);
            linkage[keep * m + k] = d;
            linkage[k * m + keep] = d;
        }
        // Linkages only grow, so rows that did not point at keep or drop keep
        // their partner unless the new cluster now beats it.
        refresh(keep);
        for (std::size_t k = 0; k < m; ++k) {
            if (!active[k].alive || k == keep) continue;
            if (best[k] == keep || best[k] == drop) {
                refresh(k);
            } else if (linkage[k * m + keep] <= tau && (best[k] == m || better(k, keep, k, best[k]))) {
                best[k] = keep;
            }
        }
    }

    std::vector<Cluster> out;
    for (auto& a : active)
        if (a.alive) out.push_back(Cluster{std::move(a.ids)});
    std::sort(out.begin(), out.end(),
              [](const Cluster& x, const Cluster& y) { return x.member_ids.front() < y.member_ids.front(); });
    return out;
}

}  // namespace orbas
