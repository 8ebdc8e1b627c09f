#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orbas {

/// Interned call. Interning assigns ids in ApiCall order, so comparing ids
/// compares calls.
using ItemId = std::int32_t;
using ItemSeq = std::vector<ItemId>;

/// A sequence of interned items with a stable identifier.
struct SequenceRecord {
    std::string id;
    ItemSeq items;
};

/// Order-preserving containment with gaps allowed.
inline bool is_subsequence(std::span<const ItemId> needle, std::span<const ItemId> haystack) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < haystack.size() && i < needle.size(); ++j)
        if (haystack[j] == needle[i]) ++i;
    return i == needle.size();
}

}  // namespace orbas
