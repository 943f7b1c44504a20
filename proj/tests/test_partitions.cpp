#include "pjrank/partition.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace pjrank;

namespace {

// uniform-ish random partition with |lambda| <= max_size
Partition random_partition(std::mt19937& rng, int max_size) {
    std::uniform_int_distribution<int> size_dist(0, max_size);
    int budget = size_dist(rng);
    std::vector<int> parts;
    int prev = budget;
    while (budget > 0 && prev > 0) {
        std::uniform_int_distribution<int> part_dist(1, std::min(prev, budget));
        int v = part_dist(rng);
        parts.push_back(v);
        budget -= v;
        prev = v;
    }
    return Partition(parts);
}

}  // namespace

TEST_CASE("construction normalizes zeros and validates") {
    CHECK(Partition({3, 1, 0, 0}) == Partition({3, 1}));
    CHECK(Partition(std::vector<int>{}).empty());
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({-1}), std::invalid_argument);
}

TEST_CASE("from_multiplicities") {
    CHECK(Partition::from_multiplicities({{1, 2}, {2, 1}}) == Partition({2, 1, 1}));
    CHECK(Partition::from_multiplicities({}) == Partition());
    CHECK(Partition::from_multiplicities({{3, 2}}) == Partition({3, 3}));
    CHECK_THROWS_AS(Partition::from_multiplicities({{1, -1}}), std::invalid_argument);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Partition lam = random_partition(rng, 12);
        CHECK(Partition::from_multiplicities(lam.multiplicities()) == lam);
    }
}

TEST_CASE("conjugate examples and involution") {
    CHECK(Partition({3, 1}).conjugate() == Partition({2, 1, 1}));
    CHECK(Partition({2, 1}).conjugate() == Partition({2, 1}));
    CHECK(Partition({1, 1, 1}).conjugate() == Partition({3}));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        Partition lam = random_partition(rng, 12);
        CHECK(lam.conjugate().conjugate() == lam);
        CHECK(lam.conjugate().size() == lam.size());
    }
}

TEST_CASE("pairing") {
    CHECK(pairing(Partition({2, 1}), Partition({1, 1})) == 3);
    CHECK(pairing(Partition({5, 2}), Partition()) == 0);
    CHECK(pairing(Partition({2, 1}), Partition({2, 1})) == 5);  // not |lambda|^2 = 9

    std::mt19937 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        Partition a = random_partition(rng, 10), b = random_partition(rng, 10);
        CHECK(pairing(a, b) == pairing(b, a));
    }
}

TEST_CASE("contains") {
    CHECK(contains(Partition({2, 1}), Partition({1, 1})));
    CHECK_FALSE(contains(Partition({2, 1}), Partition({2, 2})));
    CHECK(contains(Partition({4, 2}), Partition()));

    std::mt19937 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        Partition a = random_partition(rng, 10), b = random_partition(rng, 10);
        CHECK(contains(a, b) == contains(a.conjugate(), b.conjugate()));
    }
}

TEST_CASE("subpartitions enumerate exactly once") {
    auto subs = subpartitions(Partition({1, 1}));
    CHECK(subs.size() == 3);
    CHECK(subs == std::vector<Partition>{Partition(), Partition({1}), Partition({1, 1})});

    auto subs21 = subpartitions(Partition({2, 1}));
    CHECK(subs21.size() == 5);
    // graded lexicographic: by size, then ascending on the part vectors
    CHECK(subs21 == std::vector<Partition>{Partition(), Partition({1}), Partition({1, 1}),
                                           Partition({2}), Partition({2, 1})});

    CHECK(subpartitions(Partition()).size() == 1);

    // exhaustive over |lambda| <= 12: distinct, all contained, count bound
    for (const Partition& lam : partitions_up_to(12, 12)) {
        if (lam.size() > 12) continue;
        auto subs_l = subpartitions(lam);
        std::set<Partition> uniq(subs_l.begin(), subs_l.end());
        CHECK(uniq.size() == subs_l.size());
        long bound = 1;
        for (int part : lam.parts()) bound *= part + 1;
        CHECK(static_cast<long>(subs_l.size()) <= bound);
        for (const Partition& mu : subs_l) CHECK(contains(lam, mu));
    }
}

TEST_CASE("partitions_up_to") {
    CHECK(partitions_up_to(1, 2) ==
          std::vector<Partition>{Partition(), Partition({1}), Partition({1, 1})});
    CHECK(partitions_up_to(2, 1) ==
          std::vector<Partition>{Partition(), Partition({1}), Partition({2})});
    CHECK(partitions_up_to(0, 5) == std::vector<Partition>{Partition()});
}

TEST_CASE("rank vectors keep trailing zeros and enumerate graded-lex") {
    auto vs = rank_vectors(2, 2);
    REQUIRE(vs.size() == 6);
    CHECK(vs[0] == RankVector({0, 0}));
    CHECK(vs[1] == RankVector({1, 0}));
    CHECK(vs[2] == RankVector({1, 1}));
    CHECK(vs[3] == RankVector({2, 0}));
    CHECK(vs[4] == RankVector({2, 1}));
    CHECK(vs[5] == RankVector({2, 2}));
    CHECK_THROWS_AS(RankVector({}), std::invalid_argument);
    CHECK_THROWS_AS(RankVector({1, 2}), std::invalid_argument);
}

TEST_CASE("partition text forms") {
    CHECK(Partition::parse("2,1,1") == Partition({2, 1, 1}));
    CHECK(Partition::parse("1^2 2^1") == Partition({2, 1, 1}));
    CHECK(Partition::parse("") == Partition());
    CHECK(Partition::parse(" 3 , 2 ") == Partition({3, 2}));
    CHECK(Partition({2, 1, 1}).str() == "2,1,1");
    CHECK_THROWS_AS(Partition::parse("2,,1"), std::invalid_argument);
    CHECK_THROWS_AS(Partition::parse("x"), std::invalid_argument);
    CHECK(parse_rank_vector("1,0").entries == std::vector<int>{1, 0});
    CHECK_THROWS_AS(parse_rank_vector(""), std::invalid_argument);
}
