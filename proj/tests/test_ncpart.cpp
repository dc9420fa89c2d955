// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include <freeprob/ncpart.hpp>

#include "oracles.hpp"

using namespace freeprob;

TEST_CASE("crossing test on the canonical examples") {
    CHECK_FALSE(is_noncrossing(4, {{1, 3}, {2, 4}}));
    CHECK(is_noncrossing(4, {{1, 4}, {2, 3}}));
    CHECK(is_noncrossing(5, {{1}, {2}, {3}, {4}, {5}}));
    CHECK(is_noncrossing(4, {{1, 2, 3, 4}}));
    // crossing pairs inside one block are allowed
    CHECK(is_noncrossing(4, {{1, 2, 3}, {4}}));
}

TEST_CASE("malformed partitions are rejected") {
    CHECK_THROWS_AS(is_noncrossing(3, {{1, 2}}), domain_error);
    CHECK_THROWS_AS(is_noncrossing(3, {{1, 2}, {2, 3}}), domain_error);
    CHECK_THROWS_AS(is_noncrossing(3, {{1, 2, 3, 4}}), domain_error);
    CHECK_THROWS_AS(is_noncrossing(3, {{1, 3}, {}}), domain_error);
    CHECK_THROWS_AS(is_noncrossing(0, {}), domain_error);
}

TEST_CASE("crossing test agrees with the quadruple definition") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& blocks : oracles::all_set_partitions(n))
            CHECK(is_noncrossing(n, blocks) == oracles::noncrossing_by_quadruples(n, blocks));
}

TEST_CASE("enumeration matches filtering all set partitions") {
    for (int n = 1; n <= 6; ++n) {
        std::set<set_partition> filtered;
        for (const auto& blocks : oracles::all_set_partitions(n))
            if (oracles::noncrossing_by_quadruples(n, blocks)) {
                set_partition canon = blocks;
                for (auto& b : canon)
                    std::sort(b.begin(), b.end());
                std::sort(canon.begin(), canon.end());
                filtered.insert(canon);
            }
        std::set<set_partition> enumerated;
        for (const auto& p : enumerate_nc(n))
            enumerated.insert(p.blocks());
        CHECK(filtered == enumerated);
    }
}

TEST_CASE("enumeration is sorted, duplicate-free and Catalan-counted") {
    for (int n = 1; n <= 10; ++n) {
        const auto all = enumerate_nc(n);
        CHECK(static_cast<long long>(all.size()) == oracles::catalan(n));
        for (std::size_t i = 0; i + 1 < all.size(); ++i)
            CHECK(all[i] < all[i + 1]);
    }
    CHECK_THROWS_AS(enumerate_nc(0), domain_error);
    CHECK_THROWS_AS(enumerate_nc(15), resource_error);
}

TEST_CASE("Kreweras complement endpoints and the worked example") {
    const noncrossing_partition full(4, {{1, 2, 3, 4}});
    CHECK(kreweras(full).blocks() == set_partition{{1}, {2}, {3}, {4}});
    const noncrossing_partition singles(4, {{1}, {2}, {3}, {4}});
    CHECK(kreweras(singles).blocks() == set_partition{{1, 2, 3, 4}});
    const noncrossing_partition p(4, {{1, 3}, {2}, {4}});
    CHECK(kreweras(p).blocks() == set_partition{{1, 2}, {3, 4}});
    CHECK(p.block_count() + kreweras(p).block_count() == 5);
}

TEST_CASE("Kreweras complement equals the coarsest valid interleaving") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& p : enumerate_nc(n))
            CHECK(kreweras(p).blocks() == oracles::kreweras_bruteforce(p));
    // spot-check n = 7 on a seeded sample
    const auto all7 = enumerate_nc(7);
    std::mt19937_64 gen(20240707);
    std::uniform_int_distribution<std::size_t> pick(0, all7.size() - 1);
    for (int t = 0; t < 40; ++t) {
        const auto& p = all7[pick(gen)];
        CHECK(kreweras(p).blocks() == oracles::kreweras_bruteforce(p));
    }
}

TEST_CASE("block-count identity and injectivity") {
    for (int n = 1; n <= 7; ++n) {
        std::set<set_partition> images;
        for (const auto& p : enumerate_nc(n)) {
            const auto k = kreweras(p);
            CHECK(p.block_count() + k.block_count() == n + 1);
            images.insert(k.blocks());
        }
        CHECK(static_cast<long long>(images.size()) == oracles::catalan(n));
    }
}

TEST_CASE("Kreweras complement reverses refinement") {
    for (int n = 2; n <= 6; ++n) {
        const auto all = enumerate_nc(n);
        std::vector<noncrossing_partition> ks;
        ks.reserve(all.size());
        for (const auto& p : all)
            ks.push_back(kreweras(p));
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = 0; j < all.size(); ++j)
                if (refines(all[i], all[j].blocks()))
                    CHECK(refines(ks[j], ks[i].blocks()));
    }
}

TEST_CASE("fast complement block sizes match the greedy construction") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& p : enumerate_nc(n)) {
            auto fast = ncdetail::kreweras_block_sizes(n, p.blocks());
            const auto k = kreweras(p);
            std::vector<int> slow;
            for (const auto& b : k.blocks())
                slow.push_back(static_cast<int>(b.size()));
            std::sort(fast.begin(), fast.end());
            std::sort(slow.begin(), slow.end());
            CHECK(fast == slow);
        }
}

TEST_CASE("refinement order") {
    const noncrossing_partition singles(3, {{1}, {2}, {3}});
    const noncrossing_partition pair(3, {{1, 2}, {3}});
    CHECK(refines(singles, {{1, 3}, {2}}));
    CHECK(refines(pair, pair.blocks()));
    CHECK_FALSE(refines(pair, {{1, 3}, {2}}));
    CHECK_THROWS_AS(refines(pair, {{1, 2}}), domain_error);
}

TEST_CASE("profiles agree with explicit enumeration") {
    for (int m = 1; m <= 8; ++m) {
        const auto& profiles = nc_profiles(m);
        CHECK(static_cast<long long>(profiles.size()) == oracles::catalan(m));
        for (const auto& pr : profiles) {
            int total = 0;
            for (int s : pr.pi_sizes)
                total += s;
            CHECK(total == m);
            CHECK(static_cast<int>(pr.pi_sizes.size() + pr.kr_sizes.size()) == m + 1);
        }
    }
}
