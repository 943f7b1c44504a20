#include "pjrank/moments.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace pjrank;

TEST_CASE("class-group moment anchors") {
    // the two proved averages for p = 3, lambda = (1)
    CHECK(moment(Family::class_group(0), Partition({1}), 3) == 2);
    CHECK(moment(Family::class_group(1), Partition({1}), 3) == Rat(4, 3));

    CHECK(moment(Family::class_group(0), Partition(), 3) == 1);
    CHECK(moment(Family::class_group(0), Partition({1, 1}), 3) == 6);  // 1 + 4 + 1
}

TEST_CASE("sha and selmer moments by direct subpartition sums") {
    // lambda = (1): mu = {} contributes 1, mu = (1) contributes C(p^2) * p^{±1}
    CHECK(moment(Family::sha(0), Partition({1}), 2) == 3);  // 1 + 1*2
    CHECK(moment(Family::sha(1), Partition({1}), 2) == Rat(3, 2));
    CHECK(moment(Family::selmer(0, Rat(1, 2)), Partition({1}), 2) == 3);
    CHECK(moment(Family::selmer(1, Rat(1, 2)), Partition({1}), 2) == 3);  // delta does not enter

    // cross-check against an independently coded subpartition sum
    for (int p : {2, 3}) {
        for (const Partition& lam : partitions_up_to(2, 2)) {
            Rat direct(0);
            for (const Partition& mu : subpartitions(lam))
                direct += subgroup_count(lam, mu, Rat(p) * p) * rat_pow(Rat(p), mu.size());
            CHECK(moment(Family::selmer(0, Rat(1, 2)), lam, p) == direct);
        }
    }

    CHECK_THROWS_AS(moment(Family::class_group(0), Partition({1}), 4), std::invalid_argument);
}

TEST_CASE("duality identity, exhaustive to |lambda| <= 6") {
    CHECK(duality_holds(Partition({1}), 2));
    CHECK(duality_holds(Partition(), 7));
    for (int p : {2, 3, 5}) {
        for (const Partition& lam : partitions_up_to(6, 6)) {
            if (lam.size() > 6) continue;
            INFO("lambda=(" << lam.str() << ") p=" << p);
            CHECK(duality_holds(lam, p));
        }
    }
}

TEST_CASE("u-monotonicity, term by term") {
    for (int p : {2, 3}) {
        for (const Partition& lam : partitions_up_to(3, 3)) {
            for (const Partition& mu : subpartitions(lam)) {
                Rat c = subgroup_count(lam, mu, Rat(p));
                CHECK(c * rat_pow(Rat(p), -2 * mu.size()) <= c * rat_pow(Rat(p), -mu.size()));
            }
            CHECK(moment(Family::class_group(2), lam, p) <= moment(Family::class_group(1), lam, p));
            CHECK(moment(Family::class_group(1), lam, p) <= moment(Family::class_group(0), lam, p));
        }
    }
}

TEST_CASE("growth diagnostics stay bounded on the desk grid") {
    // empirical constants frozen from a one-time sweep of the same grid;
    // the checks pin that the ratios never exceed them
    const Rat class_cap(4);   // moment <= 4 p^{(l'|l')/2}
    const Rat sha_cap(16);    // moment <= 16 p^{(l'|l')}
    const Rat quarter_cap(8); // moment <= 8 p^{(l'|l')/4} |lambda|^3

    for (int p : {2, 3}) {
        for (const Partition& lam : partitions_up_to(3, 3)) {
            for (int u : {0, 1}) {
                auto dc = bound_ratio(Family::class_group(u), lam, p);
                CHECK(growth_within(dc, p, class_cap));
                auto ds = bound_ratio(Family::sha(u), lam, p);
                CHECK(growth_within(ds, p, sha_cap));
                if (!lam.empty()) CHECK(growth_within_quarter(dc, p, lam.size(), 3, quarter_cap));
            }
        }
    }
    CHECK(bound_ratio(Family::class_group(0), Partition({1}), 3).conj_pairing == 1);
    CHECK(bound_ratio(Family::class_group(0), Partition({1}), 3).moment_value == 2);
    CHECK_THROWS_AS(bound_ratio(Family::selmer(0, Rat(1, 2)), Partition({1}), 3),
                    std::invalid_argument);
}
