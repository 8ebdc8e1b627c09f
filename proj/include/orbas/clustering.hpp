#pragma once

#include "orbas/ratio.hpp"
#include "orbas/sequence.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace orbas {

struct Cluster {
    /// Sorted, non-empty.
    std::vector<std::string> member_ids;

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Symmetric pairwise distances keyed by id. The distance of an id to
/// itself is 0 and need not be stored.
class DistanceTable {
public:
    void set(const std::string& a, const std::string& b, Ratio d);
    /// Throws InvalidArgument when the pair is missing.
    Ratio get(const std::string& a, const std::string& b) const;

private:
    std::map<std::pair<std::string, std::string>, Ratio> table_;
};

/// Maximum pairwise distance between members of c1 and c2.
Ratio complete_linkage(const Cluster& c1, const Cluster& c2, const DistanceTable& dist);

/// 1 - seqsim(a, b).
Ratio sequence_distance(std::span<const ItemId> a, std::span<const ItemId> b);

/// Agglomerative complete-linkage clustering with distance 1 - seqsim.
/// Merges the closest pair while its linkage is <= tau. Equal linkages are
/// broken by the sorted member ids of the merged result (lowest first), so
/// the partition does not depend on input order. Output is sorted by
/// smallest member id.
std::vector<Cluster> cluster_sequences(std::span<const SequenceRecord> items, Ratio tau);

}  // namespace orbas
