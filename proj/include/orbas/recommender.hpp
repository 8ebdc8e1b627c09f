#pragma once

#include "orbas/miner.hpp"
#include "orbas/ratio.hpp"
#include "orbas/sequence.hpp"

#include <span>
#include <string>
#include <vector>

namespace orbas {

struct PatternGroup {
    std::vector<Pattern> members;
    Pattern representative;
};

struct Origin {
    std::string file;
    std::string owner;
    std::string method;

    friend bool operator==(const Origin&, const Origin&) = default;
};

/// A query-matched sequence with where it came from.
struct MatchedSequence {
    ItemSeq items;
    Origin origin;
};

struct Recommendation {
    std::size_t rank = 0;
    PatternGroup group;
    std::size_t coverage_count = 0;
    std::vector<Origin> example_origins;  // at most kMaxExamples
};

inline constexpr std::size_t kMaxExamples = 3;

/// Longest member; ties go to higher support, then the smaller call list.
Pattern select_representative(std::span<const Pattern> members);

/// Groups similar patterns: complete-linkage clustering at distance
/// 1 - tau2_sim, followed by merging any two groups whose representatives
/// are still at least tau2_sim similar. The result partitions the input and
/// no two representatives reach tau2_sim. Groups are ordered by their
/// representatives.
std::vector<PatternGroup> consolidate(std::span<const Pattern> patterns, Ratio tau2_sim);

/// Orders groups by coverage over the matched sequences, then representative
/// length (longer first), then representative calls. Groups whose
/// representative is a proper subsequence of another representative with the
/// same coverage are dropped as superfluous.
std::vector<Recommendation> rank(std::span<const PatternGroup> groups, std::span<const MatchedSequence> matched);

}  // namespace orbas
