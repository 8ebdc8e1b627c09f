#include "orbas/miner.hpp"

#include "orbas/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbas {

bool pattern_order(const Pattern& a, const Pattern& b) {
    if (a.support != b.support) return a.support > b.support;
    if (a.calls.size() != b.calls.size()) return a.calls.size() > b.calls.size();
    return a.calls < b.calls;
}

void validate(const MiningConfig& cfg) {
    if (cfg.min_sup <= 0 || cfg.min_sup > 1) throw InvalidArgument("min_sup must be in (0,1]");
    if (cfg.min_pattern_length == 0) throw InvalidArgument("min_pattern_length must be positive");
}

Ratio support_of(std::span<const ItemId> candidate, std::span<const ItemSeq> sequences) {
    if (candidate.empty()) throw InvalidArgument("support_of: empty candidate");
    if (sequences.empty()) throw InvalidArgument("support_of: empty sequence set");
    std::int64_t hits = 0;
    for (const auto& s : sequences)
        if (is_subsequence(candidate, s)) ++hits;
    return Ratio(hits, static_cast<std::int64_t>(sequences.size()));
}

namespace {

// One supporting sequence of the current prefix; `next` is the position just
// past the first instance of the prefix.
struct Projection {
    std::size_t seq;
    std::size_t next;
};

class BideMiner {
public:
    BideMiner(std::span<const ItemSeq> db, std::size_t min_count, std::size_t min_len)
        : db_(db), min_count_(min_count), min_len_(min_len) {}

    std::vector<Pattern> run() {
        std::vector<Projection> all;
        all.reserve(db_.size());
        for (std::size_t i = 0; i < db_.size(); ++i) all.push_back({i, 0});
        for (const auto& [item, proj] : extensions(all)) {
            if (proj.size() < min_count_) continue;
            prefix_.push_back(item);
            grow(proj);
            prefix_.pop_back();
        }
        std::sort(out_.begin(), out_.end(), pattern_order);
        return std::move(out_);
    }

private:
    // Projected databases of prefix+e for every item e in the suffixes.
    std::map<ItemId, std::vector<Projection>> extensions(const std::vector<Projection>& proj) const {
        std::map<ItemId, std::vector<Projection>> ext;
        for (const auto& p : proj) {
            const auto& s = db_[p.seq];
            for (std::size_t k = p.next; k < s.size(); ++k) {
                auto& list = ext[s[k]];
                if (list.empty() || list.back().seq != p.seq) list.push_back({p.seq, k + 1});
            }
        }
        return ext;
    }

    // Positions of the leftmost embedding of the prefix in s.
    std::vector<std::size_t> first_instance(const ItemSeq& s) const {
        std::vector<std::size_t> pos;
        pos.reserve(prefix_.size());
        std::size_t k = 0;
        for (ItemId e : prefix_) {
            while (s[k] != e) ++k;
            pos.push_back(k++);
        }
        return pos;
    }

    // Last-in-first positions when limit is the first instance end, or
    // last-in-last positions when limit is the sequence end.
    std::vector<std::size_t> last_positions(const ItemSeq& s, std::size_t limit) const {
        std::vector<std::size_t> pos(prefix_.size());
        std::size_t bound = limit;
        for (std::size_t i = prefix_.size(); i-- > 0;) {
            std::size_t k = bound;
            while (s[--k] != prefix_[i]) {}
            pos[i] = k;
            bound = k;
        }
        return pos;
    }

    // True when some item occurs in the i-th period of every supporting
    // sequence, for some i. Periods run from just past the first instance of
    // e1..e(i-1) up to (excluding) the i-th boundary position.
    bool shared_period_item(const std::vector<Projection>& proj, bool semi) const {
        const std::size_t n = prefix_.size();
        std::vector<std::set<ItemId>> common(n);
        std::vector<bool> alive(n, true);
        bool first = true;
        for (const auto& p : proj) {
            const auto& s = db_[p.seq];
            auto ff = first_instance(s);
            auto bounds = last_positions(s, semi ? ff.back() + 1 : s.size());
            bool any_alive = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!alive[i]) continue;
                std::size_t begin = i == 0 ? 0 : ff[i - 1] + 1;
                std::set<ItemId> here(s.begin() + static_cast<std::ptrdiff_t>(begin),
                                      s.begin() + static_cast<std::ptrdiff_t>(std::max(begin, bounds[i])));
                if (first) {
                    common[i] = std::move(here);
                } else {
                    std::set<ItemId> keep;
                    std::set_intersection(common[i].begin(), common[i].end(), here.begin(), here.end(),
                                          std::inserter(keep, keep.end()));
                    common[i] = std::move(keep);
                }
                if (common[i].empty()) alive[i] = false;
                any_alive = any_alive || alive[i];
            }
            first = false;
            if (!any_alive) return false;
        }
        return std::find(alive.begin(), alive.end(), true) != alive.end();
    }

    void grow(const std::vector<Projection>& proj) {
        if (shared_period_item(proj, /*semi=*/true)) return;  // BackScan

        auto ext = extensions(proj);
        bool forward = std::any_of(ext.begin(), ext.end(),
                                   [&](const auto& kv) { return kv.second.size() == proj.size(); });
        if (!forward && !shared_period_item(proj, /*semi=*/false) && prefix_.size() >= min_len_) {
            Pattern p;
            p.calls = prefix_;
            p.support = Ratio(static_cast<std::int64_t>(proj.size()), static_cast<std::int64_t>(db_.size()));
            for (const auto& pr : proj) p.supporting_ids.push_back(pr.seq);
            out_.push_back(std::move(p));
        }

        for (const auto& [item, next] : ext) {
            if (next.size() < min_count_) continue;
            prefix_.push_back(item);
            grow(next);
            prefix_.pop_back();
        }
    }

    std::span<const ItemSeq> db_;
    std::size_t min_count_;
    std::size_t min_len_;
    ItemSeq prefix_;
    std::vector<Pattern> out_;
};

}  // namespace

std::vector<Pattern> mine_closed(std::span<const ItemSeq> sequences, const MiningConfig& cfg) {
    validate(cfg);
    if (sequences.empty()) return {};
    auto min_count = ceil_nonneg(cfg.min_sup * Ratio(static_cast<std::int64_t>(sequences.size())));
    return BideMiner(sequences, static_cast<std::size_t>(std::max<std::int64_t>(min_count, 1)),
                     cfg.min_pattern_length)
        .run();
}

}  // namespace orbas
