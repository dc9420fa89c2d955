// SPDX-License-Identifier: Apache-2.0
//
// Numeric evaluation of the Stieltjes and eta transforms, the closed-form
// S-transform of the Marchenko-Pastur law, and the damped fixed-point
// solver for the self-consistency equation characterizing the limiting
// information-plus-noise spectrum.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "core.hpp"

namespace freeprob {

using complexd = std::complex<double>;

// m(z) = sum_i w_i / (x_i - z), exact for atomic measures. Valid for any z
// off the atoms; the callers use Im z > 0 or real z outside the support.
inline complexd stieltjes_atoms(const atomic_measure& mu, complexd z) {
    complexd s(0.0, 0.0);
    for (const auto& a : mu.atoms) {
        const complexd d = complexd(a.position, 0.0) - z;
        if (d == complexd(0.0, 0.0))
            throw pole_error("evaluation point collides with an atom");
        s += a.weight / d;
    }
    return s;
}

// Asymptotic series m(z) = -sum_{k>=0} m_k z^{-(k+1)} with m_0 = 1,
// truncated at the sequence order K. The tail is bounded by
//
//   (radius/|z|)^{K+1} / (1 - radius/|z|) / |z|
//
// when radius bounds the support; the bound presumes |z| >= 2*radius and the
// series diverges outright for |z| <= radius, which is the hard error here.
inline complexd stieltjes_moments(const moment_sequence& ms, complexd z, double support_radius) {
    if (!(support_radius >= 0.0))
        throw domain_error("support radius must be nonnegative");
    if (ms.order() < 1)
        throw domain_error("moment order must be positive");
    const double az = std::abs(z);
    if (az <= support_radius)
        throw convergence_error("series evaluation inside the support radius");
    const complexd zinv = 1.0 / z;
    complexd p = zinv;
    complexd acc = -zinv; // m_0 term
    for (int k = 1; k <= ms.order(); ++k) {
        p *= zinv;
        acc -= ms.m[static_cast<std::size_t>(k - 1)] * p;
    }
    return acc;
}

// A priori bound on the truncation error of stieltjes_moments.
inline double stieltjes_truncation_bound(int K, double support_radius, double abs_z) {
    const double r = support_radius / abs_z;
    return std::pow(r, K + 1) / (1.0 - r) / abs_z;
}

// eta(z) = sum_i w_i / (1 + z x_i) for z >= 0; strictly decreasing in z for
// measures supported on the nonnegative axis.
inline double eta_atoms(const atomic_measure& mu, double z) {
    if (!(z >= 0.0))
        throw domain_error("eta transform is evaluated at z >= 0");
    double s = 0.0;
    for (const auto& a : mu.atoms) {
        const double d = 1.0 + z * a.position;
        if (d == 0.0)
            throw pole_error("eta evaluation point hits a pole");
        s += a.weight / d;
    }
    return s;
}

// Inverse of a strictly decreasing eta by bisection; tolerance 1e-12 in the
// argument.
template <typename Fn>
double eta_inverse(Fn&& eta, double y, double lo = 1e-9, double hi = 1e6) {
    double flo = eta(lo);
    double fhi = eta(hi);
    if (!(flo >= y && y >= fhi))
        throw solver_error("eta inverse: target not bracketed on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eta(mid) >= y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double eta_inverse_atoms(const atomic_measure& mu, double y) {
    return eta_inverse([&](double z) { return eta_atoms(mu, z); }, y);
}

// S-transform of the Marchenko-Pastur law: 1 / (1 + c z) on (-1, 0).
inline double s_transform_mp(double c, double z) {
    if (!(c > 0.0))
        throw domain_error("Marchenko-Pastur ratio must be positive");
    if (!(z > -1.0 && z < 0.0))
        throw domain_error("S-transform argument must lie in (-1, 0)");
    const double d = 1.0 + c * z;
    if (d == 0.0)
        throw pole_error("S-transform pole at z = -1/c");
    return 1.0 / d;
}

// Solves the self-consistency equation for the Stieltjes transform of the
// limiting information-plus-noise spectrum,
//
//   m = sum_t w_t / ( t/(1 + s2 c m) - (1 + s2 c m) z + s2 (1 - c) ),
//
// by damped Picard iteration from m_0 = -1/z. For Im z > 0 the solution is
// the unique fixed point with Im m > 0; real negative z (outside the
// support) is the analytically continued case.
inline complexd dozier_silverstein_mw(const atomic_measure& gamma, double c, double sigma2,
                                      complexd z, double damping = 0.5, int max_iter = 10000,
                                      double tol = 1e-12) {
    if (!(c > 0.0))
        throw domain_error("aspect ratio must be positive");
    if (!(sigma2 >= 0.0))
        throw domain_error("noise variance must be nonnegative");
    const bool upper = z.imag() > 0.0;
    if (!upper && !(z.imag() == 0.0 && z.real() < 0.0))
        throw domain_error("evaluation point must lie in the upper half plane or on the negative axis");

    complexd m = -1.0 / z;
    double resid = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const complexd q = 1.0 + sigma2 * c * m;
        complexd f(0.0, 0.0);
        for (const auto& a : gamma.atoms)
            f += a.weight / (a.position / q - q * z + sigma2 * (1.0 - c));
        resid = std::abs(f - m);
        if (!std::isfinite(resid))
            throw solver_error("fixed-point iteration diverged");
        if (resid < tol) {
            m = f;
            if (upper && !(m.imag() > 0.0))
                throw solver_error("fixed point left the upper half plane");
            return m;
        }
        m = (1.0 - damping) * m + damping * f;
    }
    throw solver_error("fixed-point iteration did not converge; residual " + std::to_string(resid));
}

} // namespace freeprob
