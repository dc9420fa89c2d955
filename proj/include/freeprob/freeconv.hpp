// SPDX-License-Identifier: Apache-2.0
//
// The four free convolution operations on truncated moment sequences:
// additive (cumulants add), multiplicative (cumulants convolve over the
// noncrossing lattice), their deconvolutions, fast paths for the
// Marchenko-Pastur factor, and the rectangular trace renormalization.
//
// Deconvolutions return formal moment sequences: no positivity is claimed
// or checked (is_plausible is the advisory predicate).
#pragma once

#include <cstddef>
#include <vector>

#include "core.hpp"

namespace freeprob {

namespace fcdetail {

inline void require_same_order(const moment_sequence& a, const moment_sequence& b) {
    if (a.order() != b.order())
        throw domain_error("moment sequences must have equal orders");
    if (a.order() < 1)
        throw domain_error("moment order must be positive");
}

} // namespace fcdetail

// Additive free convolution: cumulants add.
inline moment_sequence add_conv(const moment_sequence& a, const moment_sequence& b) {
    fcdetail::require_same_order(a, b);
    auto ca = moments_to_cumulants(a.m);
    const auto cb = moments_to_cumulants(b.m);
    for (std::size_t i = 0; i < ca.size(); ++i)
        ca[i] += cb[i];
    return moment_sequence(cumulants_to_moments(ca));
}

// Additive free deconvolution: cumulants subtract; add_conv(result, b) == c.
inline moment_sequence add_deconv(const moment_sequence& c, const moment_sequence& b) {
    fcdetail::require_same_order(c, b);
    auto cc = moments_to_cumulants(c.m);
    const auto cb = moments_to_cumulants(b.m);
    for (std::size_t i = 0; i < cc.size(); ++i)
        cc[i] -= cb[i];
    return moment_sequence(cumulants_to_moments(cc));
}

// Multiplicative free convolution: cumulant series convolve boxedly. Runs
// through the NC(m) enumeration, so it inherits the K <= 12 guard; the
// Marchenko-Pastur fast paths below cover the production pipeline at any
// order.
inline moment_sequence mult_conv(const moment_sequence& a, const moment_sequence& b) {
    fcdetail::require_same_order(a, b);
    const int K = a.order();
    const basic_series<double> ra(moments_to_cumulants(a.m));
    const basic_series<double> rb(moments_to_cumulants(b.m));
    return moment_sequence(cumulants_to_moments(boxed_convolve_bruteforce(ra, rb, K).coef));
}

// Multiplicative free deconvolution: triangular solve such that
// mult_conv(result, b) == c at working precision. Needs a nonvanishing
// first moment of b.
inline moment_sequence mult_deconv(const moment_sequence& c, const moment_sequence& b) {
    fcdetail::require_same_order(c, b);
    if (b.m[0] == 0.0)
        throw singular_error("multiplicative deconvolution needs a nonzero first moment");
    const int K = c.order();
    const basic_series<double> rc(moments_to_cumulants(c.m));
    const basic_series<double> rb(moments_to_cumulants(b.m));
    return moment_sequence(cumulants_to_moments(boxed_deconvolve_bruteforce(rc, rb, K).coef));
}

// Fast multiplicative convolution with the Marchenko-Pastur law of ratio c:
// scale the moments by c, read the result as cumulants, push them through
// the moment-cumulant recursion and scale back by 1/c.
template <typename T>
std::vector<T> mp_conv_kernel(const std::vector<T>& m, const T& c) {
    std::vector<T> scaled(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        scaled[i] = c * m[i];
    auto out = cumulants_to_moments(scaled);
    for (auto& x : out)
        x = x / c;
    return out;
}

// Exact inverse of mp_conv_kernel: the same sandwich around the inverse
// recursion.
template <typename T>
std::vector<T> mp_deconv_kernel(const std::vector<T>& m, const T& c) {
    std::vector<T> scaled(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        scaled[i] = c * m[i];
    auto out = moments_to_cumulants(scaled);
    for (auto& x : out)
        x = x / c;
    return out;
}

inline moment_sequence mp_conv(const moment_sequence& a, double c) {
    if (!(c > 0.0))
        throw domain_error("Marchenko-Pastur ratio must be positive");
    if (a.order() < 1)
        throw domain_error("moment order must be positive");
    return moment_sequence(mp_conv_kernel(a.m, c));
}

inline moment_sequence mp_deconv(const moment_sequence& a, double c) {
    if (!(c > 0.0))
        throw domain_error("Marchenko-Pastur ratio must be positive");
    if (a.order() < 1)
        throw domain_error("moment order must be positive");
    return moment_sequence(mp_deconv_kernel(a.m, c));
}

// Trace renormalization between the two Gram matrices of an n x N matrix A
// (c = n/N): Tr((AA*)^k) = Tr((A*A)^k), so the moments under the two
// normalized traces differ by the factor c, with the moments under the
// N-normalized trace c times the n-normalized ones. Dividing by c converts
// the former into the latter; multiplying converts back.
inline moment_sequence aspect_flip(const moment_sequence& a, double c) {
    if (!(c > 0.0))
        throw domain_error("aspect ratio must be positive");
    if (a.order() < 1)
        throw domain_error("moment order must be positive");
    std::vector<double> out(a.m);
    for (auto& x : out)
        x /= c;
    return moment_sequence(std::move(out));
}

} // namespace freeprob
