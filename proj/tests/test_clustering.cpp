#include "orbas/clustering.hpp"
#include "orbas/error.hpp"
#include "orbas/similarity.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>

using orbas::Cluster;
using orbas::Ratio;
using orbas::SequenceRecord;
using orbas::testing::items;

namespace {

std::vector<SequenceRecord> records(std::initializer_list<std::pair<const char*, const char*>> spec) {
    std::vector<SequenceRecord> out;
    for (auto [id, s] : spec) out.push_back({id, items(s)});
    return out;
}

std::vector<SequenceRecord> random_records(std::mt19937& rng) {
    std::uniform_int_distribution<int> count(1, 12);
    std::vector<SequenceRecord> out;
    int n = count(rng);
    for (int i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "s%02d", i);
        out.push_back({id, orbas::testing::random_items(rng, 4, 5)});
    }
    return out;
}

Ratio diameter(const Cluster& c, const std::map<std::string, orbas::ItemSeq>& by_id) {
    Ratio d(0);
    for (const auto& a : c.member_ids)
        for (const auto& b : c.member_ids) d = std::max(d, 1 - orbas::seqsim(by_id.at(a), by_id.at(b)));
    return d;
}

// Reference agglomeration recomputing every linkage from scratch each round.
std::vector<Cluster> naive_clusters(const std::vector<SequenceRecord>& in, Ratio tau) {
    std::map<std::string, orbas::ItemSeq> by_id;
    std::vector<std::vector<std::string>> cs;
    for (const auto& r : in) {
        by_id[r.id] = r.items;
        cs.push_back({r.id});
    }
    for (;;) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Ratio best_d;
        std::vector<std::string> best_ids;
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                Ratio d(0);
                for (const auto& a : cs[i])
                    for (const auto& b : cs[j]) d = std::max(d, 1 - orbas::seqsim(by_id[a], by_id[b]));
                if (d > tau) continue;
                std::vector<std::string> ids = cs[i];
                ids.insert(ids.end(), cs[j].begin(), cs[j].end());
                std::sort(ids.begin(), ids.end());
                if (!best || d < best_d || (d == best_d && ids < best_ids)) {
                    best = {i, j};
                    best_d = d;
                    best_ids = ids;
                }
            }
        if (!best) break;
        cs[best->first] = best_ids;
        cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(best->second));
    }
    std::vector<Cluster> out;
    for (auto& c : cs) out.push_back({c});
    std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) { return a.member_ids < b.member_ids; });
    return out;
}

}  // namespace

TEST_CASE("agrees with a from-scratch agglomeration") {
    std::mt19937 rng(77);
    const Ratio taus[] = {Ratio(0), Ratio(1, 3), Ratio(1, 2), Ratio(7, 10), Ratio(9, 10), Ratio(1)};
    for (int trial = 0; trial < 300; ++trial) {
        auto in = random_records(rng);
        for (Ratio tau : taus) CHECK(orbas::cluster_sequences(in, tau) == naive_clusters(in, tau));
    }
}

TEST_CASE("worked clustering examples") {
    auto in = records({{"1", "abc"}, {"2", "cab"}, {"3", "pqr"}});
    auto at07 = orbas::cluster_sequences(in, Ratio(7, 10));
    REQUIRE(at07.size() == 2);
    CHECK(at07[0].member_ids == std::vector<std::string>{"1", "2"});
    CHECK(at07[1].member_ids == std::vector<std::string>{"3"});

    auto at05 = orbas::cluster_sequences(in, Ratio(1, 2));
    CHECK(at05.size() == 3);

    auto single = orbas::cluster_sequences(records({{"only", "xyz"}}), Ratio(0));
    REQUIRE(single.size() == 1);
    CHECK(single[0].member_ids == std::vector<std::string>{"only"});

    auto dup = orbas::cluster_sequences(records({{"a", "xy"}, {"b", "pq"}, {"c", "xy"}}), Ratio(0));
    REQUIRE(dup.size() == 2);
    CHECK(dup[0].member_ids == std::vector<std::string>{"a", "c"});
}

TEST_CASE("clustering rejects bad input") {
    std::vector<SequenceRecord> none;
    CHECK_THROWS_AS(orbas::cluster_sequences(none, Ratio(1, 2)), orbas::InvalidArgument);
    auto in = records({{"1", "ab"}});
    CHECK_THROWS_AS(orbas::cluster_sequences(in, Ratio(3, 2)), orbas::InvalidArgument);
    CHECK_THROWS_AS(orbas::cluster_sequences(in, Ratio(-1, 2)), orbas::InvalidArgument);
    auto dup_ids = records({{"1", "ab"}, {"1", "cd"}});
    CHECK_THROWS_AS(orbas::cluster_sequences(dup_ids, Ratio(1, 2)), orbas::InvalidArgument);
}

TEST_CASE("complete linkage is the maximum pairwise distance") {
    orbas::DistanceTable t;
    t.set("x", "y", Ratio(3, 10));
    CHECK(orbas::complete_linkage({{"x"}}, {{"y"}}, t) == Ratio(3, 10));
    CHECK(t.get("y", "x") == Ratio(3, 10));
    CHECK(t.get("x", "x") == Ratio(0));

    t.set("a", "b", Ratio(2, 10));
    t.set("a", "c", Ratio(9, 10));
    t.set("b", "c", Ratio(5, 10));
    CHECK(orbas::complete_linkage({{"a"}}, {{"b", "c"}}, t) == Ratio(9, 10));
    Cluster abc{{"a", "b", "c"}};
    CHECK(orbas::complete_linkage(abc, abc, t) == Ratio(9, 10));

    CHECK_THROWS_AS(orbas::complete_linkage({{"a"}}, {{"zz"}}, t), orbas::InvalidArgument);
}

TEST_CASE("sequence_distance is one minus seqsim") {
    auto a = items("abc");
    auto b = items("cab");
    CHECK(orbas::sequence_distance(a, b) == Ratio(2, 3));
}

TEST_CASE("clustering properties on random instances") {
    std::mt19937 rng(7);
    const Ratio taus[] = {Ratio(0), Ratio(1, 4), Ratio(1, 2), Ratio(7, 10), Ratio(9, 10), Ratio(1)};
    for (int trial = 0; trial < 200; ++trial) {
        auto in = random_records(rng);
        std::map<std::string, orbas::ItemSeq> by_id;
        for (const auto& r : in) by_id[r.id] = r.items;
        std::size_t previous = in.size() + 1;
        for (Ratio tau : taus) {
            auto clusters = orbas::cluster_sequences(in, tau);

            std::multiset<std::string> seen;
            for (const auto& c : clusters) {
                REQUIRE(!c.member_ids.empty());
                CHECK(std::is_sorted(c.member_ids.begin(), c.member_ids.end()));
                seen.insert(c.member_ids.begin(), c.member_ids.end());
                CHECK(diameter(c, by_id) <= tau);
            }
            std::multiset<std::string> expected;
            for (const auto& r : in) expected.insert(r.id);
            CHECK(seen == expected);

            for (std::size_t i = 1; i < clusters.size(); ++i)
                CHECK(clusters[i - 1].member_ids.front() < clusters[i].member_ids.front());

            CHECK(clusters.size() <= previous);
            previous = clusters.size();

            auto shuffled = in;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            CHECK(orbas::cluster_sequences(shuffled, tau) == clusters);
        }
    }
}
