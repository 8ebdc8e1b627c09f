#pragma once

// Query pipeline: lookup -> matched sequences -> stage-1 clustering ->
// per-cluster closed mining -> consolidation -> ranking -> rendering.

#include "orbas/api_call.hpp"
#include "orbas/ratio.hpp"
#include "orbas/recommender.hpp"
#include "orbas/repository.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace orbas {

enum class OutputFormat { Text, Json };

struct SearchConfig {
    Ratio min_sup{1, 2};
    Ratio tau1{7, 10};       // stage-1 distance threshold
    Ratio tau2_sim{3, 20};   // stage-2 similarity threshold
    std::size_t top_k = 10;
    std::size_t min_pattern_length = 2;
    OutputFormat format = OutputFormat::Text;
};

/// Throws InvalidArgument when a threshold is outside [0,1], min_sup is 0,
/// or top_k / min_pattern_length is 0.
void validate(const SearchConfig& cfg);

struct SearchResult {
    std::string query;
    SearchConfig config;
    /// Interned calls; ItemId i names vocabulary[i].
    std::vector<ApiCall> vocabulary;
    std::vector<MatchedSequence> matched;
    std::size_t distinct_matched = 0;
    std::size_t cluster_count = 0;
    /// Every ranked recommendation; rendering truncates to top_k.
    std::vector<Recommendation> recommendations;
};

SearchResult search(const RepositoryIndex& index, std::string_view query, const SearchConfig& cfg);

/// Byte-deterministic rendering of the top_k recommendations.
std::string render(const SearchResult& result, OutputFormat format);

/// Decimal form used in output: up to 4 places, trailing zeros removed.
std::string decimal(const Ratio& r);

}  // namespace orbas
