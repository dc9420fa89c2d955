// SPDX-License-Identifier: Apache-2.0
//
// The two headline applications. The information-plus-noise map sends the
// limiting signal spectrum to the limiting observed spectrum,
//
//   W = ((gamma deconv mp_c) boxplus delta_{sigma2}) conv mp_c,
//
// and is exactly invertible in moment arithmetic, which is the denoising
// direction. The G2 covariance estimator is computed by two independent
// routes: deconvolve-then-evaluate, and the classical two-equation fixed
// point on the empirical spectrum.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "freeconv.hpp"
#include "transforms.hpp"

namespace freeprob {

struct info_noise_params {
    double c;      // aspect ratio n/N in the limit
    double sigma2; // noise variance
    int order;     // moment truncation
};

namespace estdetail {

inline void validate(const info_noise_params& p) {
    if (!(p.c > 0.0))
        throw domain_error("aspect ratio must be positive");
    if (!(p.sigma2 >= 0.0))
        throw domain_error("noise variance must be nonnegative");
    if (p.order < 1)
        throw domain_error("moment order must be positive");
}

inline std::vector<double> truncated(const moment_sequence& m, int K) {
    if (m.order() < K)
        throw domain_error("input order below requested truncation");
    return std::vector<double>(m.m.begin(), m.m.begin() + K);
}

// The point-mass summand enters as a first-cumulant shift.
inline std::vector<double> sandwich(std::vector<double> g, double c, double shift) {
    auto x = mp_deconv_kernel(g, c);
    auto a = moments_to_cumulants(x);
    a[0] += shift;
    return mp_conv_kernel(cumulants_to_moments(a), c);
}

} // namespace estdetail

// Predicted moments of the limiting observed spectrum from the limiting
// signal spectrum.
inline moment_sequence info_noise_forward(const moment_sequence& gamma, const info_noise_params& p) {
    estdetail::validate(p);
    return moment_sequence(estdetail::sandwich(estdetail::truncated(gamma, p.order), p.c, p.sigma2));
}

// Exact moment-arithmetic inverse of info_noise_forward (denoising).
inline moment_sequence info_noise_inverse(const moment_sequence& w, const info_noise_params& p) {
    estdetail::validate(p);
    return moment_sequence(estdetail::sandwich(estdetail::truncated(w, p.order), p.c, -p.sigma2));
}

// G2 estimate of the population-covariance Stieltjes transform at real
// z < 0: deconvolve the sample spectrum's moments and evaluate the
// asymptotic series. The deconvolved sequence has no intrinsic support, so
// the caller supplies the radius controlling truncation error.
inline double g2_moment_route(const moment_sequence& gamma_emp, double c, double z,
                              double support_bound) {
    if (!(c > 0.0))
        throw domain_error("aspect ratio must be positive");
    if (!(z < 0.0))
        throw domain_error("evaluation point must be negative real");
    const moment_sequence deconv = mp_deconv(gamma_emp, c);
    return stieltjes_moments(deconv, complexd(z, 0.0), support_bound).real();
}

// G2 estimate by the classical two-equation route: solve
//
//   theta c m(theta) - (1 - c) + theta/z = 0
//
// for theta < 0 on the empirical spectrum (bracketed bisection; theta is a
// monotone function of z), then return (theta/z) m(theta).
inline double g2_fixed_point(const atomic_measure& gamma_emp, double c, double z) {
    if (!(c > 0.0))
        throw domain_error("aspect ratio must be positive");
    if (!(z < 0.0))
        throw domain_error("evaluation point must be negative real");

    auto m_emp = [&](double t) {
        double s = 0.0;
        for (const auto& a : gamma_emp.atoms) {
            const double d = a.position - t;
            if (d == 0.0)
                throw pole_error("theta probe hit an atom");
            s += a.weight / d;
        }
        return s;
    };
    auto lhs = [&](double t) { return t * c * m_emp(t) - (1.0 - c) + t / z; };

    // geometric scan outward from tiny |theta| until the sign changes
    double prev_t = 0.0;
    double prev_v = 0.0;
    bool have_prev = false;
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (int j = -40; j <= 40; ++j) {
        const double t = z * std::pow(2.0, j);
        const double v = lhs(t);
        if (v == 0.0) {
            lo = hi = t;
            bracketed = true;
            break;
        }
        if (have_prev && ((prev_v < 0.0) != (v < 0.0))) {
            lo = prev_t;
            hi = t;
            bracketed = true;
            break;
        }
        prev_t = t;
        prev_v = v;
        have_prev = true;
    }
    if (!bracketed)
        throw solver_error("no sign change bracketing the theta root");

    double flo = lhs(lo);
    for (int it = 0; it < 200 && lo != hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = lhs(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double theta = 0.5 * (lo + hi);
    return theta / z * m_emp(theta);
}

} // namespace freeprob
