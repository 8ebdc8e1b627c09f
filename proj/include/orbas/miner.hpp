#pragma once

#include "orbas/ratio.hpp"
#include "orbas/sequence.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace orbas {

struct MiningConfig {
    Ratio min_sup{1, 2};
    std::size_t min_pattern_length = 1;
};

/// A frequent closed sequence. supporting_ids index into the mined input.
struct Pattern {
    ItemSeq calls;
    Ratio support;
    std::vector<std::size_t> supporting_ids;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Fraction of sequences containing candidate as a gapped subsequence.
Ratio support_of(std::span<const ItemId> candidate, std::span<const ItemSeq> sequences);

/// Frequent closed sequences by bi-directional extension (BIDE): a prefix is
/// reported when no forward or backward extension keeps its support, and a
/// prefix whose every semi-maximum period shares an item (BackScan) is
/// pruned together with its extensions.
///
/// Sorted by support descending, then length descending, then item order.
std::vector<Pattern> mine_closed(std::span<const ItemSeq> sequences, const MiningConfig& cfg);

/// Exhaustive reference miner: enumerates every distinct subsequence.
/// Throws InstanceTooLarge past 48 total items or 8 distinct items.
std::vector<Pattern> oracle_closed(std::span<const ItemSeq> sequences, const MiningConfig& cfg);

/// Sort order shared by both miners.
bool pattern_order(const Pattern& a, const Pattern& b);

void validate(const MiningConfig& cfg);

}  // namespace orbas
