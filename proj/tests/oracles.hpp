// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, kept independent of the implementation paths they
// certify: set-partition enumeration with the literal quadruple crossing
// test, the direct sum over NC(n) for the moment-cumulant formula, the
// brute-force "coarsest valid complement" search, and the closed-form
// Stieltjes transform of the Marchenko-Pastur law.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <boost/rational.hpp>

#include <freeprob/ncpart.hpp>

namespace oracles {

using rational = boost::rational<long long>;

// All set partitions of {1..n} via restricted growth strings.
inline std::vector<freeprob::set_partition> all_set_partitions(int n) {
    std::vector<freeprob::set_partition> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int maxb) -> void {
        if (i == n) {
            freeprob::set_partition blocks(static_cast<std::size_t>(maxb));
            for (int j = 0; j < n; ++j)
                blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(j)])].push_back(j + 1);
            out.push_back(std::move(blocks));
            return;
        }
        for (int b = 0; b <= maxb; ++b) {
            rgs[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, std::max(maxb, b + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

// The literal definition: crossing iff some i<j<k<l has i~k, j~l without all
// four in one block.
inline bool noncrossing_by_quadruples(int n, const freeprob::set_partition& blocks) {
    std::vector<int> id(static_cast<std::size_t>(n) + 1, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int x : blocks[b])
            id[static_cast<std::size_t>(x)] = static_cast<int>(b);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int l = k + 1; l <= n; ++l)
                    if (id[static_cast<std::size_t>(i)] == id[static_cast<std::size_t>(k)] &&
                        id[static_cast<std::size_t>(j)] == id[static_cast<std::size_t>(l)] &&
                        id[static_cast<std::size_t>(i)] != id[static_cast<std::size_t>(j)])
                        return false;
    return true;
}

// Direct evaluation of the moment-cumulant sum m_n = sum_{pi in NC(n)}
// prod_{B in pi} alpha_|B|; depends only on the enumeration, not on
// Kreweras complements or the fast recursion.
template <typename T>
std::vector<T> nc_sum_moments(const std::vector<T>& alpha, int K) {
    std::vector<T> m(static_cast<std::size_t>(K), T(0));
    for (int n = 1; n <= K; ++n) {
        T s(0);
        freeprob::for_each_nc(n, [&](const freeprob::set_partition& blocks) {
            T t(1);
            for (const auto& b : blocks)
                t = t * alpha[b.size() - 1];
            s += t;
        });
        m[static_cast<std::size_t>(n - 1)] = s;
    }
    return m;
}

// Interleave p (on odd positions) with q (on even positions) and test the
// 2n-point partition by the quadruple oracle.
inline bool interleaving_noncrossing(const freeprob::noncrossing_partition& p,
                                     const freeprob::set_partition& q) {
    const int n = p.ground_size();
    freeprob::set_partition combined;
    for (const auto& b : p.blocks()) {
        std::vector<int> mb;
        for (int x : b)
            mb.push_back(2 * x - 1);
        combined.push_back(std::move(mb));
    }
    for (const auto& b : q) {
        std::vector<int> mb;
        for (int x : b)
            mb.push_back(2 * x);
        combined.push_back(std::move(mb));
    }
    return noncrossing_by_quadruples(2 * n, combined);
}

// Brute-force Kreweras complement: the unique valid q of minimal block
// count, which every other valid q refines.
inline freeprob::set_partition kreweras_bruteforce(const freeprob::noncrossing_partition& p) {
    const int n = p.ground_size();
    std::vector<freeprob::set_partition> valid;
    for (const auto& q : all_set_partitions(n))
        if (interleaving_noncrossing(p, q))
            valid.push_back(q);
    auto coarsest = valid.front();
    for (const auto& q : valid)
        if (q.size() < coarsest.size())
            coarsest = q;
    // uniqueness of the maximum: every valid q must refine it
    const freeprob::noncrossing_partition k(n, coarsest);
    for (const auto& q : valid) {
        const freeprob::noncrossing_partition qp(n, q);
        if (!freeprob::refines(qp, coarsest))
            throw std::logic_error("complement search found a non-maximal lattice");
    }
    return k.blocks();
}

inline long long catalan(int n) {
    long long c = 1;
    for (int i = 0; i < n; ++i)
        c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

// Stieltjes transform of the Marchenko-Pastur law (mean-one normalization)
// at real z < 0, through the closed-form quadratic for the eta transform:
// with w = -1/z,  c w eta^2 + ((1-c) w + 1) eta - 1 = 0, taking the branch
// with eta(0) = 1, and m(z) = -eta(-1/z)/z.
inline double mp_stieltjes(double c, double z) {
    const double w = -1.0 / z;
    const double a = c * w;
    const double b = (1.0 - c) * w + 1.0;
    const double disc = b * b + 4.0 * a;
    const double eta = (-b + std::sqrt(disc)) / (2.0 * a);
    return -eta / z;
}

} // namespace oracles
