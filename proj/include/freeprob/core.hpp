// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared by every module, plus moment constructors for the
// named spectral laws. All types are immutable values and all operations
// are pure; concurrent use is unrestricted.
#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace freeprob {

// Raw moments m_1..m_K under the normalized trace. m_0 == 1 is implicit and
// never stored. A deconvolved sequence is a formal object: positivity is not
// an invariant here (see is_plausible).
struct moment_sequence {
    std::vector<double> m;

    moment_sequence() = default;
    explicit moment_sequence(std::vector<double> v) : m(std::move(v)) {}

    int order() const { return static_cast<int>(m.size()); }
    double at(int k) const { return m.at(static_cast<std::size_t>(k - 1)); } // 1-based
};

// Free cumulants alpha_1..alpha_K: coefficients of the cumulant series
// R(z) = sum_n alpha_n z^n.
struct cumulant_sequence {
    std::vector<double> alpha;

    cumulant_sequence() = default;
    explicit cumulant_sequence(std::vector<double> v) : alpha(std::move(v)) {}

    int order() const { return static_cast<int>(alpha.size()); }
    double at(int k) const { return alpha.at(static_cast<std::size_t>(k - 1)); }
};

// Finite probability measure given by (position, weight) atoms.
struct atomic_measure {
    struct atom {
        double position;
        double weight;
    };

    std::vector<atom> atoms;

    atomic_measure() = default;
    explicit atomic_measure(std::vector<atom> a) : atoms(std::move(a)) {
        double sum = 0.0;
        for (const auto& at : atoms) {
            if (!std::isfinite(at.position))
                throw domain_error("atom position must be finite");
            if (!(at.weight >= 0.0))
                throw domain_error("atom weight must be nonnegative");
            sum += at.weight;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw domain_error("atom weights must sum to one");
    }
};

inline atomic_measure point_measure(double position) {
    return atomic_measure({{position, 1.0}});
}

// --- spectral laws -------------------------------------------------------

struct point_mass {
    double a;
};

// Limiting spectrum of Wishart-type sample covariance matrices with aspect
// ratio c; normalized to mean one, i.e. free cumulants alpha_k = c^{k-1}.
// For c > 1 the mandatory atom at zero is encoded by the same cumulants.
struct marchenko_pastur {
    double c;
};

// Oracle law: only the second cumulant is nonzero, so its moments count
// noncrossing pairings.
struct semicircle {
    double variance;
};

using law = std::variant<point_mass, marchenko_pastur, semicircle, atomic_measure>;

// Exact raw moments of a law to working precision.
inline moment_sequence moments_of(const law& l, int K) {
    if (K < 1)
        throw domain_error("moment order must be positive");
    std::vector<double> out(static_cast<std::size_t>(K), 0.0);
    if (const auto* pm = std::get_if<point_mass>(&l)) {
        double p = 1.0;
        for (int k = 1; k <= K; ++k) {
            p *= pm->a;
            out[static_cast<std::size_t>(k - 1)] = p;
        }
    } else if (const auto* mp = std::get_if<marchenko_pastur>(&l)) {
        if (!(mp->c > 0.0))
            throw domain_error("Marchenko-Pastur ratio must be positive");
        std::vector<double> alpha(static_cast<std::size_t>(K));
        double p = 1.0;
        for (int k = 1; k <= K; ++k) {
            alpha[static_cast<std::size_t>(k - 1)] = p;
            p *= mp->c;
        }
        out = cumulants_to_moments(alpha);
    } else if (const auto* sc = std::get_if<semicircle>(&l)) {
        if (!(sc->variance >= 0.0))
            throw domain_error("semicircle variance must be nonnegative");
        std::vector<double> alpha(static_cast<std::size_t>(K), 0.0);
        if (K >= 2)
            alpha[1] = sc->variance;
        out = cumulants_to_moments(alpha);
    } else {
        const auto& mu = std::get<atomic_measure>(l);
        for (int k = 1; k <= K; ++k) {
            double s = 0.0;
            for (const auto& at : mu.atoms)
                s += at.weight * std::pow(at.position, k);
            out[static_cast<std::size_t>(k - 1)] = s;
        }
    }
    return moment_sequence(std::move(out));
}

// --- typed moment/cumulant conversions -----------------------------------

inline moment_sequence cumulants_to_moments(const cumulant_sequence& a) {
    return moment_sequence(cumulants_to_moments(a.alpha));
}

inline cumulant_sequence moments_to_cumulants(const moment_sequence& m) {
    return cumulant_sequence(moments_to_cumulants(m.m));
}

// Advisory Hankel positivity check: a sequence can represent a measure on
// the real line only if each Hankel matrix [m_{i+j}] (m_0 = 1) is positive
// semidefinite; m_2 >= m_1^2 is the first nontrivial case. Deconvolution
// outputs may legitimately fail this.
inline bool is_plausible(const moment_sequence& ms, double tol = 1e-10) {
    const int K = ms.order();
    const int p = K / 2; // H uses m_0..m_{2p}
    auto mom = [&](int k) { return k == 0 ? 1.0 : ms.m[static_cast<std::size_t>(k - 1)]; };
    std::vector<std::vector<double>> h(static_cast<std::size_t>(p) + 1,
                                       std::vector<double>(static_cast<std::size_t>(p) + 1));
    double scale = 1.0;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j) {
            h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mom(i + j);
            scale = std::max(scale, std::abs(mom(i + j)));
        }
    // LDL^T with tolerance; a significantly negative pivot certifies
    // indefiniteness, a near-zero pivot stops the factorization.
    for (int i = 0; i <= p; ++i) {
        double d = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        if (d < -tol * scale)
            return false;
        if (d <= tol * scale)
            return true;
        for (int j = i + 1; j <= p; ++j) {
            const double f = h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] / d;
            for (int k = i; k <= p; ++k)
                h[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -=
                    f * h[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
    }
    return true;
}

} // namespace freeprob
