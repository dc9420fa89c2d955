// SPDX-License-Identifier: Apache-2.0
//
// Noncrossing partition lattice: enumeration, crossing test, refinement
// order and the Kreweras complement. This is the combinatorial substrate
// behind the moment-cumulant machinery and serves as the brute-force
// oracle for the fast recursions.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace freeprob {

// A set partition of {1..n} given as blocks. Canonical form: each block
// sorted ascending, blocks ordered by least element.
using set_partition = std::vector<std::vector<int>>;

namespace ncdetail {

inline set_partition canonicalize_partition(int n, set_partition blocks) {
    if (n < 1)
        throw domain_error("partition ground set must be nonempty");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (auto& b : blocks) {
        if (b.empty())
            throw domain_error("partition has an empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            if (x < 1 || x > n)
                throw domain_error("partition element out of range");
            if (seen[static_cast<std::size_t>(x)])
                throw domain_error("partition element repeated");
            seen[static_cast<std::size_t>(x)] = 1;
        }
    }
    for (int x = 1; x <= n; ++x)
        if (!seen[static_cast<std::size_t>(x)])
            throw domain_error("partition does not cover its ground set");
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

// A partition is crossing iff two arcs between consecutive elements of
// distinct blocks interleave. Quadratic in the number of arcs.
inline bool arcs_noncrossing(const set_partition& blocks) {
    struct arc {
        int lo, hi, block;
    };
    std::vector<arc> arcs;
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi)
        for (std::size_t j = 0; j + 1 < blocks[static_cast<std::size_t>(bi)].size(); ++j)
            arcs.push_back({blocks[static_cast<std::size_t>(bi)][j],
                            blocks[static_cast<std::size_t>(bi)][j + 1], bi});
    for (std::size_t i = 0; i < arcs.size(); ++i)
        for (std::size_t j = i + 1; j < arcs.size(); ++j) {
            if (arcs[i].block == arcs[j].block)
                continue;
            const arc& a = arcs[i];
            const arc& b = arcs[j];
            if ((a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) ||
                (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi))
                return false;
        }
    return true;
}

} // namespace ncdetail

// True iff no i < j < k < l has i~k and j~l in distinct blocks.
// Throws domain_error for malformed partitions.
inline bool is_noncrossing(int n, set_partition blocks) {
    return ncdetail::arcs_noncrossing(ncdetail::canonicalize_partition(n, std::move(blocks)));
}

class noncrossing_partition {
public:
    noncrossing_partition(int n, set_partition blocks)
        : n_(n), blocks_(ncdetail::canonicalize_partition(n, std::move(blocks))) {
        if (!ncdetail::arcs_noncrossing(blocks_))
            throw domain_error("partition is crossing");
    }

    int ground_size() const { return n_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const set_partition& blocks() const { return blocks_; }

    friend bool operator==(const noncrossing_partition& a, const noncrossing_partition& b) {
        return a.n_ == b.n_ && a.blocks_ == b.blocks_;
    }
    // Lexicographic on the canonical block encoding; stable fixture order.
    friend bool operator<(const noncrossing_partition& a, const noncrossing_partition& b) {
        return std::tie(a.n_, a.blocks_) < std::tie(b.n_, b.blocks_);
    }

private:
    int n_;
    set_partition blocks_;
};

namespace ncdetail {

// Recursive generator. The pending stack holds disjoint contiguous intervals
// in descending start order, so the top always contains the smallest
// uncovered element; blocks are therefore emitted ordered by least element
// and each block is built ascending, i.e. the visited partition is canonical.
template <typename F>
void generate_nc(std::vector<std::pair<int, int>>& pending, set_partition& acc, F& visit) {
    if (pending.empty()) {
        visit(const_cast<const set_partition&>(acc));
        return;
    }
    const auto [a, b] = pending.back();
    pending.pop_back();

    std::vector<int> block{a};
    auto choose = [&](auto&& self, int from) -> void {
        // close the current block: split the rest of [a, b] into gaps
        const std::size_t mark = pending.size();
        if (block.back() < b)
            pending.emplace_back(block.back() + 1, b);
        for (std::size_t i = block.size(); i-- > 1;) {
            const int lo = block[i - 1] + 1;
            const int hi = block[i] - 1;
            if (lo <= hi)
                pending.emplace_back(lo, hi);
        }
        acc.push_back(block);
        generate_nc(pending, acc, visit);
        acc.pop_back();
        pending.resize(mark);

        for (int e = from; e <= b; ++e) {
            block.push_back(e);
            self(self, e + 1);
            block.pop_back();
        }
    };
    choose(choose, a + 1);

    pending.emplace_back(a, b);
}

} // namespace ncdetail

// Visits every noncrossing partition of {1..n} exactly once, in canonical
// block form. Enumeration bound guards the exponential blowup.
template <typename F>
void for_each_nc(int n, F&& visit) {
    if (n < 1)
        throw domain_error("ground set must be nonempty");
    if (n > 14)
        throw resource_error("noncrossing enumeration supports n <= 14");
    std::vector<std::pair<int, int>> pending{{1, n}};
    set_partition acc;
    ncdetail::generate_nc(pending, acc, visit);
}

// All of NC(n), sorted lexicographically on the canonical block encoding.
inline std::vector<noncrossing_partition> enumerate_nc(int n) {
    std::vector<noncrossing_partition> out;
    for_each_nc(n, [&](const set_partition& blocks) { out.emplace_back(n, blocks); });
    std::sort(out.begin(), out.end());
    return out;
}

// Kreweras complement via the interleaved-circle definition: points are laid
// out as 1, 1', 2, 2', ..., n, n' and the complement is the coarsest
// partition of the primed points whose union with p stays noncrossing.
// Partitions with a noncrossing interleaving are exactly the ones refining
// the complement, so merging pairs greedily whenever the interleaving stays
// noncrossing reaches it.
inline noncrossing_partition kreweras(const noncrossing_partition& p) {
    const int n = p.ground_size();

    std::vector<int> comp(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i)
        comp[static_cast<std::size_t>(i)] = i;

    set_partition original;
    for (const auto& b : p.blocks()) {
        std::vector<int> mapped;
        mapped.reserve(b.size());
        for (int x : b)
            mapped.push_back(2 * x - 1);
        original.push_back(std::move(mapped));
    }

    auto interleaving_noncrossing = [&](int merge_a, int merge_b) {
        set_partition combined = original;
        std::map<int, std::vector<int>> barred;
        for (int i = 1; i <= n; ++i) {
            int c = comp[static_cast<std::size_t>(i)];
            if (c == merge_b)
                c = merge_a;
            barred[c].push_back(2 * i);
        }
        for (auto& [key, blk] : barred)
            combined.push_back(std::move(blk));
        return ncdetail::arcs_noncrossing(combined);
    };

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const int ci = comp[static_cast<std::size_t>(i)];
            const int cj = comp[static_cast<std::size_t>(j)];
            if (ci == cj)
                continue;
            if (interleaving_noncrossing(ci, cj))
                for (int k = 1; k <= n; ++k)
                    if (comp[static_cast<std::size_t>(k)] == cj)
                        comp[static_cast<std::size_t>(k)] = ci;
        }

    std::map<int, std::vector<int>> groups;
    for (int i = 1; i <= n; ++i)
        groups[comp[static_cast<std::size_t>(i)]].push_back(i);
    set_partition blocks;
    for (auto& [key, blk] : groups)
        blocks.push_back(std::move(blk));
    return noncrossing_partition(n, std::move(blocks));
}

// True iff every block of p lies inside a block of q. q need not be
// noncrossing; it must cover the same ground set.
inline bool refines(const noncrossing_partition& p, const set_partition& q) {
    const int n = p.ground_size();
    const auto qc = ncdetail::canonicalize_partition(n, q);
    std::vector<int> owner(static_cast<std::size_t>(n) + 1, -1);
    for (int bi = 0; bi < static_cast<int>(qc.size()); ++bi)
        for (int x : qc[static_cast<std::size_t>(bi)])
            owner[static_cast<std::size_t>(x)] = bi;
    for (const auto& b : p.blocks()) {
        const int o = owner[static_cast<std::size_t>(b.front())];
        for (int x : b)
            if (owner[static_cast<std::size_t>(x)] != o)
                return false;
    }
    return true;
}

namespace ncdetail {

// Fast Kreweras block computation used when complements are needed in bulk:
// with a partition read as the permutation whose cycles are its blocks in
// increasing order, the complement's blocks are the cycles of
// sigma^{-1} * (1 2 ... n). Cross-checked against kreweras() in the tests.
inline std::vector<int> kreweras_block_sizes(int n, const set_partition& blocks) {
    std::vector<int> sigma(static_cast<std::size_t>(n) + 1);
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i + 1 < b.size(); ++i)
            sigma[static_cast<std::size_t>(b[i])] = b[i + 1];
        sigma[static_cast<std::size_t>(b.back())] = b.front();
    }
    std::vector<int> sigma_inv(static_cast<std::size_t>(n) + 1);
    for (int x = 1; x <= n; ++x)
        sigma_inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(x)])] = x;

    std::vector<char> done(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> sizes;
    for (int s = 1; s <= n; ++s) {
        if (done[static_cast<std::size_t>(s)])
            continue;
        int len = 0;
        int x = s;
        while (!done[static_cast<std::size_t>(x)]) {
            done[static_cast<std::size_t>(x)] = 1;
            ++len;
            x = sigma_inv[static_cast<std::size_t>(x == n ? 1 : x + 1)];
        }
        sizes.push_back(len);
    }
    return sizes;
}

} // namespace ncdetail

// Block-size profile of a partition and its Kreweras complement; all a boxed
// convolution needs from NC(m).
struct nc_profile {
    std::vector<int> pi_sizes;
    std::vector<int> kr_sizes;
};

// Cached profiles of NC(m). Guarded at m <= 12; the enumeration is
// exponential and the fast recursion is the production path.
inline const std::vector<nc_profile>& nc_profiles(int m) {
    if (m < 1)
        throw domain_error("ground set must be nonempty");
    if (m > 12)
        throw resource_error("noncrossing profiles support m <= 12");
    static std::mutex mutex;
    static std::map<int, std::vector<nc_profile>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;
    std::vector<nc_profile> profiles;
    for_each_nc(m, [&](const set_partition& blocks) {
        nc_profile pr;
        pr.pi_sizes.reserve(blocks.size());
        for (const auto& b : blocks)
            pr.pi_sizes.push_back(static_cast<int>(b.size()));
        pr.kr_sizes = ncdetail::kreweras_block_sizes(m, blocks);
        profiles.push_back(std::move(pr));
    });
    return cache.emplace(m, std::move(profiles)).first->second;
}

} // namespace freeprob
