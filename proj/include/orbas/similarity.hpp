#pragma once

// n-gram sets and the length-weighted SeqSim ratio between two sequences.
//
// G(s) is the set of every contiguous run of s (all lengths 1..|s|), with
// repeated runs collapsed. SeqSim(a, b) = W(G(a) & G(b)) / W(G(a) | G(b)),
// where W sums gram lengths.

#include "orbas/error.hpp"
#include "orbas/ratio.hpp"

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace orbas {

template <typename Item>
using Gram = std::vector<Item>;

template <typename Item>
using NGramSet = std::set<Gram<Item>>;

template <typename Item>
NGramSet<Item> ngram_set(std::span<const Item> s) {
    if (s.empty()) throw InvalidArgument("ngram_set: empty sequence");
    NGramSet<Item> grams;
    for (std::size_t begin = 0; begin < s.size(); ++begin)
        for (std::size_t end = begin + 1; end <= s.size(); ++end)
            grams.emplace(s.begin() + begin, s.begin() + end);
    return grams;
}

template <typename Item>
std::int64_t gram_weight(const NGramSet<Item>& grams) {
    std::int64_t w = 0;
    for (const auto& g : grams) w += static_cast<std::int64_t>(g.size());
    return w;
}

/// Similarity of two precomputed gram sets. Walks both ordered sets once.
template <typename Item>
Ratio seqsim(const NGramSet<Item>& a, const NGramSet<Item>& b) {
    std::int64_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            common += static_cast<std::int64_t>(ia->size());
            ++ia;
            ++ib;
        }
    }
    std::int64_t total = gram_weight(a) + gram_weight(b) - common;
    if (total == 0) throw InvalidArgument("seqsim: empty gram set");
    return Ratio(common, total);
}

template <typename Item>
Ratio seqsim(std::span<const Item> a, std::span<const Item> b) {
    return seqsim(ngram_set(a), ngram_set(b));
}

template <typename Item>
Ratio seqsim(const std::vector<Item>& a, const std::vector<Item>& b) {
    return seqsim(std::span<const Item>(a), std::span<const Item>(b));
}

}  // namespace orbas
