// SPDX-License-Identifier: Apache-2.0
//
// Truncated formal power series with vanishing constant term, boxed
// convolution over the noncrossing lattice, and the moment <-> cumulant
// maps. The fast O(K^3) recursion is the production path; the explicit
// sum over NC(m) is kept as an oracle behind a size guard.
//
// Everything is templated on the coefficient scalar so the same kernels
// run in double precision and, for the combinatorial certifications, in
// exact rational arithmetic.
#pragma once

#include <utility>
#include <vector>

#include "errors.hpp"
#include "ncpart.hpp"

namespace freeprob {

// coef[i] multiplies z^{i+1}; the constant term is identically zero.
template <typename T = double>
struct basic_series {
    std::vector<T> coef;

    basic_series() = default;
    explicit basic_series(std::vector<T> c) : coef(std::move(c)) {}

    int order() const { return static_cast<int>(coef.size()); }
};

using formal_series = basic_series<double>;

namespace series_detail {

template <typename T>
T ipow(T base, int e) {
    if (e < 0)
        return T(1) / ipow(base, -e);
    T r(1);
    while (e > 0) {
        if (e & 1)
            r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

inline void require_order(int K) {
    if (K < 1)
        throw domain_error("series order must be positive");
}

} // namespace series_detail

// All coefficients one.
template <typename T = double>
basic_series<T> zeta(int K) {
    series_detail::require_order(K);
    return basic_series<T>(std::vector<T>(static_cast<std::size_t>(K), T(1)));
}

// Unit of boxed convolution: (1, 0, 0, ...).
template <typename T = double>
basic_series<T> id_series(int K) {
    series_detail::require_order(K);
    std::vector<T> c(static_cast<std::size_t>(K), T(0));
    c[0] = T(1);
    return basic_series<T>(std::move(c));
}

// coef_n(out) = c^{n+offset} * coef_n(f).
template <typename T>
basic_series<T> scale_coeff(const basic_series<T>& f, const T& c, int exponent_offset) {
    series_detail::require_order(f.order());
    basic_series<T> out = f;
    for (int n = 1; n <= f.order(); ++n)
        out.coef[static_cast<std::size_t>(n - 1)] =
            out.coef[static_cast<std::size_t>(n - 1)] * series_detail::ipow(c, n + exponent_offset);
    return out;
}

// Moment-cumulant recursion: with M the moment series and alpha the
// cumulants,
//
//   m_k = sum_{j=1..k} alpha_j * [coef_{k-j}]((1 + M)^j),
//
// evaluated left to right; coefficient k of the result depends only on
// alpha_1..alpha_k, so the map is triangular. Equivalent to boxed
// convolution of the cumulant series with the all-ones series.
template <typename T>
std::vector<T> cumulants_to_moments(const std::vector<T>& alpha) {
    const int K = static_cast<int>(alpha.size());
    series_detail::require_order(K);
    std::vector<T> m(static_cast<std::size_t>(K), T(0));
    std::vector<T> base(static_cast<std::size_t>(K) + 1, T(0)); // 1 + M, degree 0..K
    base[0] = T(1);
    for (int k = 1; k <= K; ++k) {
        // powers of (1 + M) truncated at degree k-1 use only m_1..m_{k-1}
        std::vector<T> cur(base.begin(), base.begin() + k);
        T total = alpha[0] * cur[static_cast<std::size_t>(k - 1)];
        for (int j = 2; j <= k; ++j) {
            std::vector<T> nxt(static_cast<std::size_t>(k), T(0));
            for (int d = 0; d < k; ++d) {
                T s(0);
                for (int i = 0; i <= d; ++i)
                    s += cur[static_cast<std::size_t>(i)] * base[static_cast<std::size_t>(d - i)];
                nxt[static_cast<std::size_t>(d)] = s;
            }
            cur = std::move(nxt);
            total += alpha[static_cast<std::size_t>(j - 1)] * cur[static_cast<std::size_t>(k - j)];
        }
        m[static_cast<std::size_t>(k - 1)] = total;
        base[static_cast<std::size_t>(k)] = total;
    }
    return m;
}

// Exact triangular inverse of cumulants_to_moments: alpha_k enters the
// recursion with coefficient one.
template <typename T>
std::vector<T> moments_to_cumulants(const std::vector<T>& m) {
    const int K = static_cast<int>(m.size());
    series_detail::require_order(K);
    std::vector<T> base(static_cast<std::size_t>(K) + 1, T(0));
    base[0] = T(1);
    for (int i = 1; i <= K; ++i)
        base[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i - 1)];
    // pows[j][d] = [coef_d]((1 + M)^j)
    std::vector<std::vector<T>> pows(static_cast<std::size_t>(K) + 1);
    pows[1] = base;
    for (int j = 2; j <= K; ++j) {
        pows[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(K) + 1, T(0));
        for (int d = 0; d <= K; ++d) {
            T s(0);
            for (int i = 0; i <= d; ++i)
                s += pows[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)] *
                     base[static_cast<std::size_t>(d - i)];
            pows[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)] = s;
        }
    }
    std::vector<T> alpha(static_cast<std::size_t>(K), T(0));
    for (int k = 1; k <= K; ++k) {
        T s = m[static_cast<std::size_t>(k - 1)];
        for (int j = 1; j < k; ++j)
            s -= alpha[static_cast<std::size_t>(j - 1)] *
                 pows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - j)];
        alpha[static_cast<std::size_t>(k - 1)] = s;
    }
    return alpha;
}

// Inverse of the all-ones series under boxed convolution; coefficients are
// signed Catalan numbers (1, -1, 2, -5, 14, ...). Computed by the same
// triangular solve that inverts the moment-cumulant recursion, applied to
// the boxed unit.
template <typename T = double>
basic_series<T> moeb(int K) {
    series_detail::require_order(K);
    return basic_series<T>(moments_to_cumulants(id_series<T>(K).coef));
}

// Brute-force boxed convolution:
//
//   coef_m(f x g) = sum_{pi in NC(m)}  prod_{B in pi} f_|B|
//                                    * prod_{B in K(pi)} g_|B|.
//
// Exponential in K; the enumeration guard keeps this an oracle.
template <typename T>
basic_series<T> boxed_convolve_bruteforce(const basic_series<T>& f, const basic_series<T>& g, int K) {
    series_detail::require_order(K);
    if (f.order() < K || g.order() < K)
        throw domain_error("operand order below requested truncation");
    basic_series<T> out;
    out.coef.assign(static_cast<std::size_t>(K), T(0));
    for (int m = 1; m <= K; ++m) {
        T s(0);
        for (const nc_profile& pr : nc_profiles(m)) {
            T t(1);
            for (int sz : pr.pi_sizes)
                t = t * f.coef[static_cast<std::size_t>(sz - 1)];
            for (int sz : pr.kr_sizes)
                t = t * g.coef[static_cast<std::size_t>(sz - 1)];
            s += t;
        }
        out.coef[static_cast<std::size_t>(m - 1)] = s;
    }
    return out;
}

// Triangular solve for x with x (boxed) g = h. The full-block partition is
// the only one reaching x_m and carries g_1^m, so g must have a nonzero
// first coefficient.
template <typename T>
basic_series<T> boxed_deconvolve_bruteforce(const basic_series<T>& h, const basic_series<T>& g, int K) {
    series_detail::require_order(K);
    if (h.order() < K || g.order() < K)
        throw domain_error("operand order below requested truncation");
    if (g.coef[0] == T(0))
        throw singular_error("boxed deconvolution needs a nonvanishing first coefficient");
    basic_series<T> x;
    x.coef.assign(static_cast<std::size_t>(K), T(0));
    for (int m = 1; m <= K; ++m) {
        T s = h.coef[static_cast<std::size_t>(m - 1)];
        for (const nc_profile& pr : nc_profiles(m)) {
            if (pr.pi_sizes.size() == 1)
                continue; // the full block carries the unknown x_m
            T t(1);
            for (int sz : pr.pi_sizes)
                t = t * x.coef[static_cast<std::size_t>(sz - 1)];
            for (int sz : pr.kr_sizes)
                t = t * g.coef[static_cast<std::size_t>(sz - 1)];
            s -= t;
        }
        x.coef[static_cast<std::size_t>(m - 1)] = s / series_detail::ipow(g.coef[0], m);
    }
    return x;
}

} // namespace freeprob
