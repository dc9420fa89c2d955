// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo for information-plus-noise and sample covariance
// ensembles. Empirical moments are normalized traces of matrix powers (no
// eigendecomposition on the moment path); the Hermitian eigensolver is
// exposed separately for estimators that need the empirical spectrum.
//
// Reproducibility contract: all randomness flows from a counter-based
// generator, per-rep streams are derived by a fixed 64-bit mix, and results
// are reduced in rep order, so a given spec is bit-stable across runs and
// safe to parallelize externally.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "core.hpp"
#include "freeconv.hpp"

namespace freeprob {

using matrix_c = Eigen::MatrixXcd;

namespace rng_detail {

constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace rng_detail

// Counter-based uniform generator: draw k is mix64(seed + (k+1)*golden).
// Random access by counter makes matrix entries seekable and order-free.
class counter_rng {
public:
    explicit counter_rng(std::uint64_t seed) : seed_(seed) {}

    // uniform in [0, 1)
    double at(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }
    // uniform in (0, 1]; safe under log
    double at_open0(std::uint64_t counter) const {
        return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
    }
    std::uint64_t bits(std::uint64_t counter) const {
        return rng_detail::mix64(seed_ + (counter + 1) * rng_detail::golden);
    }

private:
    std::uint64_t seed_;
};

// Per-rep stream derivation: mix64(seed XOR (rep+1)*golden). Fixed so that
// fixtures stay stable and reps can run independently.
inline std::uint64_t rep_seed(std::uint64_t seed, std::uint64_t rep) {
    return rng_detail::mix64(seed ^ ((rep + 1) * rng_detail::golden));
}

enum class noise_kind {
    complex_gaussian, // i.i.d. complex Gaussian, E|X_ij|^2 = 1
    quaternary        // experimental non-Gaussian control: (+-1 +- i)/sqrt(2)
};

// i.i.d. complex Gaussian entries with independent real/imaginary parts of
// variance 1/2 each, via one Box-Muller pair per entry. Entry (i, j) uses
// uniforms at counters 2*(i*N+j) and 2*(i*N+j)+1.
inline matrix_c sample_gaussian_matrix(int n, int N, std::uint64_t stream_seed) {
    if (n < 1 || N < 1)
        throw domain_error("matrix dimensions must be positive");
    const counter_rng rng(stream_seed);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    matrix_c x(n, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < N; ++j) {
            const std::uint64_t k = 2 * (static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(N) +
                                         static_cast<std::uint64_t>(j));
            const double r = std::sqrt(-2.0 * std::log(rng.at_open0(k)));
            const double t = 2.0 * std::numbers::pi * rng.at(k + 1);
            x(i, j) = std::complex<double>(r * std::cos(t), r * std::sin(t)) * inv_sqrt2;
        }
    return x;
}

inline matrix_c sample_noise_matrix(int n, int N, std::uint64_t stream_seed, noise_kind kind) {
    if (kind == noise_kind::complex_gaussian)
        return sample_gaussian_matrix(n, N, stream_seed);
    if (n < 1 || N < 1)
        throw domain_error("matrix dimensions must be positive");
    const counter_rng rng(stream_seed);
    const double h = 1.0 / std::sqrt(2.0);
    matrix_c x(n, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < N; ++j) {
            const std::uint64_t b =
                rng.bits(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(N) +
                         static_cast<std::uint64_t>(j));
            x(i, j) = std::complex<double>((b & 1) ? h : -h, (b & 2) ? h : -h);
        }
    return x;
}

namespace simdetail {

// Largest-remainder apportionment of `slots` eigenvalues among the atoms;
// ties resolved toward lower atom index.
inline std::vector<double> allocate_eigenvalues(const atomic_measure& spectrum, int slots) {
    if (slots < 1)
        throw domain_error("eigenvalue allocation needs a positive dimension");
    const std::size_t na = spectrum.atoms.size();
    std::vector<int> counts(na, 0);
    std::vector<std::pair<double, std::size_t>> rem(na);
    int used = 0;
    for (std::size_t i = 0; i < na; ++i) {
        const double target = spectrum.atoms[i].weight * slots;
        counts[i] = static_cast<int>(std::floor(target));
        used += counts[i];
        rem[i] = {target - std::floor(target), i};
    }
    std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second < b.second;
    });
    for (int r = 0; r < slots - used; ++r)
        ++counts[rem[static_cast<std::size_t>(r)].second];

    // nonzero eigenvalues first so they land in the leading diagonal slots
    std::vector<double> eig;
    eig.reserve(static_cast<std::size_t>(slots));
    for (std::size_t i = 0; i < na; ++i)
        if (spectrum.atoms[i].position != 0.0)
            eig.insert(eig.end(), static_cast<std::size_t>(counts[i]), spectrum.atoms[i].position);
    for (std::size_t i = 0; i < na; ++i)
        if (spectrum.atoms[i].position == 0.0)
            eig.insert(eig.end(), static_cast<std::size_t>(counts[i]), 0.0);
    return eig;
}

} // namespace simdetail

// Deterministic n x N matrix R whose Gram matrix (1/N) R R* has the
// prescribed spectrum (largest-remainder counts, nonzero eigenvalues in the
// leading diagonal slots). For n > N the spectrum must put enough mass at
// zero that at most N eigenvalues are nonzero.
inline matrix_c realize_signal(const atomic_measure& spectrum, int n, int N) {
    if (n < 1 || N < 1)
        throw domain_error("matrix dimensions must be positive");
    for (const auto& a : spectrum.atoms)
        if (a.position < 0.0)
            throw domain_error("signal spectrum must be nonnegative");
    const auto eig = simdetail::allocate_eigenvalues(spectrum, n);
    int nonzero = 0;
    for (double v : eig)
        if (v != 0.0)
            ++nonzero;
    if (nonzero > std::min(n, N))
        throw domain_error("spectrum allocates more nonzero eigenvalues than the rank bound");
    matrix_c r = matrix_c::Zero(n, N);
    for (int j = 0; j < nonzero; ++j)
        r(j, j) = std::sqrt(static_cast<double>(N) * eig[static_cast<std::size_t>(j)]);
    return r;
}

// Haar unitary via QR of a Gaussian matrix with the phases of the R diagonal
// fixed.
inline matrix_c haar_unitary(int n, std::uint64_t stream_seed) {
    const matrix_c g = sample_gaussian_matrix(n, n, stream_seed);
    Eigen::HouseholderQR<matrix_c> qr(g);
    matrix_c q = qr.householderQ();
    const matrix_c r = qr.matrixQR();
    for (int i = 0; i < n; ++i) {
        const std::complex<double> d = r(i, i);
        const double ad = std::abs(d);
        if (ad > 0.0)
            q.col(i) *= d / ad;
    }
    return q;
}

// Normalized traces of matrix powers, by iterated multiplication.
inline moment_sequence empirical_moments(const matrix_c& m, int K) {
    if (m.rows() != m.cols())
        throw domain_error("empirical moments need a square matrix");
    if (K < 1)
        throw domain_error("moment order must be positive");
    const double n = static_cast<double>(m.rows());
    std::vector<double> out(static_cast<std::size_t>(K));
    matrix_c p = m;
    for (int k = 1; k <= K; ++k) {
        out[static_cast<std::size_t>(k - 1)] = p.trace().real() / n;
        if (k < K)
            p = (p * m).eval();
    }
    return moment_sequence(std::move(out));
}

// Empirical eigenvalue distribution of a Hermitian matrix, uniform weights.
inline atomic_measure empirical_spectrum(const matrix_c& m) {
    if (m.rows() != m.cols())
        throw domain_error("empirical spectrum needs a square matrix");
    Eigen::SelfAdjointEigenSolver<matrix_c> es(m);
    if (es.info() != Eigen::Success)
        throw solver_error("eigensolver failed");
    const int n = static_cast<int>(m.rows());
    std::vector<atomic_measure::atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        atoms.push_back({es.eigenvalues()[i], 1.0 / n});
    return atomic_measure(std::move(atoms));
}

// Recipe for a seeded ensemble experiment.
struct ensemble_spec {
    int n = 0;
    int N = 0;
    double sigma2 = 0.0;
    atomic_measure gamma_spectrum; // target spectrum of (1/N) R R*
    std::uint64_t seed = 0;
    int reps = 1;
    int order = 1;
    bool rotate_signal = false; // conjugate R by a seeded Haar unitary
    noise_kind noise = noise_kind::complex_gaussian;
};

struct moment_estimate {
    moment_sequence mean;
    std::vector<double> std_error; // per-moment standard error across reps
    int reps = 0;
};

namespace simdetail {

inline void validate(const ensemble_spec& s) {
    if (s.n < 1 || s.N < 1)
        throw domain_error("matrix dimensions must be positive");
    if (s.reps < 1)
        throw domain_error("repetition count must be positive");
    if (s.order < 1)
        throw domain_error("moment order must be positive");
    if (!(s.sigma2 >= 0.0))
        throw domain_error("noise variance must be nonnegative");
}

// mean and standard error across reps, reduced in rep order
inline moment_estimate reduce(std::vector<moment_sequence> per_rep) {
    const int reps = static_cast<int>(per_rep.size());
    const int K = per_rep.front().order();
    std::vector<double> mean(static_cast<std::size_t>(K), 0.0);
    for (const auto& ms : per_rep)
        for (int k = 0; k < K; ++k)
            mean[static_cast<std::size_t>(k)] += ms.m[static_cast<std::size_t>(k)];
    for (auto& v : mean)
        v /= reps;
    std::vector<double> se(static_cast<std::size_t>(K), 0.0);
    if (reps > 1) {
        for (const auto& ms : per_rep)
            for (int k = 0; k < K; ++k) {
                const double d = ms.m[static_cast<std::size_t>(k)] - mean[static_cast<std::size_t>(k)];
                se[static_cast<std::size_t>(k)] += d * d;
            }
        for (auto& v : se)
            v = std::sqrt(v / (reps - 1) / reps);
    }
    return moment_estimate{moment_sequence(std::move(mean)), std::move(se), reps};
}

constexpr std::uint64_t rotation_stream = 0xA3C59AC2B7F1E85Dull;

} // namespace simdetail

// W = (1/N)(R + sigma X)(R + sigma X)* per rep; returns mean and standard
// error of the empirical moments across reps.
inline moment_estimate simulate_info_noise(const ensemble_spec& spec) {
    simdetail::validate(spec);
    matrix_c r = realize_signal(spec.gamma_spectrum, spec.n, spec.N);
    if (spec.rotate_signal)
        r = haar_unitary(spec.n, rng_detail::mix64(spec.seed ^ simdetail::rotation_stream)) * r;
    const double sigma = std::sqrt(spec.sigma2);
    std::vector<moment_sequence> per_rep;
    per_rep.reserve(static_cast<std::size_t>(spec.reps));
    for (int rep = 0; rep < spec.reps; ++rep) {
        const matrix_c x =
            sample_noise_matrix(spec.n, spec.N, rep_seed(spec.seed, static_cast<std::uint64_t>(rep)),
                                spec.noise);
        const matrix_c a = r + sigma * x;
        const matrix_c w = (a * a.adjoint()) / static_cast<double>(spec.N);
        per_rep.push_back(empirical_moments(w, spec.order));
    }
    return simdetail::reduce(std::move(per_rep));
}

// Sample covariance of N independent observations with population spectrum
// gamma_spectrum: Gamma = (1/N) Y Y* with Y = Theta^{1/2} G. sigma2 is
// ignored here; the population covariance carries the whole spectrum.
inline matrix_c sample_covariance_matrix(const atomic_measure& theta_spectrum, int n, int N,
                                         std::uint64_t stream_seed) {
    const auto d = simdetail::allocate_eigenvalues(theta_spectrum, n);
    const matrix_c g = sample_gaussian_matrix(n, N, stream_seed);
    matrix_c y = g;
    for (int i = 0; i < n; ++i)
        y.row(i) *= std::sqrt(d[static_cast<std::size_t>(i)]);
    return (y * y.adjoint()) / static_cast<double>(N);
}

inline moment_estimate simulate_sample_covariance(const ensemble_spec& spec) {
    simdetail::validate(spec);
    std::vector<moment_sequence> per_rep;
    per_rep.reserve(static_cast<std::size_t>(spec.reps));
    for (int rep = 0; rep < spec.reps; ++rep) {
        const matrix_c g = sample_covariance_matrix(
            spec.gamma_spectrum, spec.n, spec.N, rep_seed(spec.seed, static_cast<std::uint64_t>(rep)));
        per_rep.push_back(empirical_moments(g, spec.order));
    }
    return simdetail::reduce(std::move(per_rep));
}

// One factor of an alternating mixed-moment product: a polynomial in either
// the noise Gram matrix (1/N) X X* or the signal Gram matrix (1/N) R R*,
// recentered to zero normalized trace after evaluation.
struct decay_factor {
    enum class source_t { noise, signal };
    source_t source;
    std::vector<double> poly; // p0 + p1 x + p2 x^2 + ...
};

// For each n (N scaled to keep the template's aspect ratio), the mean over
// reps of |tr_n(product of centered factors)|. Freeness of the noise and
// signal families shows up as decay of this statistic in n; running the
// same pattern with every factor drawn from the noise matrix is the
// non-decaying negative control.
inline std::vector<std::pair<int, double>> mixed_moment_decay(const std::vector<int>& n_list,
                                                              const ensemble_spec& tmpl,
                                                              const std::vector<decay_factor>& pattern) {
    simdetail::validate(tmpl);
    if (pattern.empty())
        throw domain_error("pattern must be nonempty");
    for (const auto& f : pattern)
        if (f.poly.empty())
            throw domain_error("pattern polynomial must be nonempty");
    const double c = static_cast<double>(tmpl.n) / static_cast<double>(tmpl.N);

    auto poly_centered = [](const std::vector<double>& p, const matrix_c& m) {
        const int n = static_cast<int>(m.rows());
        matrix_c acc = matrix_c::Zero(n, n);
        acc.diagonal().setConstant(p.back());
        for (std::size_t i = p.size() - 1; i-- > 0;) {
            acc = (acc * m).eval();
            acc.diagonal().array() += p[i];
        }
        const double t = acc.trace().real() / n;
        acc.diagonal().array() -= t;
        return acc;
    };

    std::vector<std::pair<int, double>> out;
    out.reserve(n_list.size());
    for (int n : n_list) {
        const int N = static_cast<int>(std::llround(n / c));
        if (n < 1 || N < 1)
            throw domain_error("matrix dimensions must be positive");
        const matrix_c r = realize_signal(tmpl.gamma_spectrum, n, N);
        const matrix_c b = (r * r.adjoint()) / static_cast<double>(N);
        double acc = 0.0;
        for (int rep = 0; rep < tmpl.reps; ++rep) {
            const matrix_c x = sample_noise_matrix(
                n, N, rep_seed(tmpl.seed, static_cast<std::uint64_t>(rep)), tmpl.noise);
            const matrix_c a = (x * x.adjoint()) / static_cast<double>(N);
            matrix_c prod;
            bool first = true;
            for (const auto& f : pattern) {
                const matrix_c factor =
                    poly_centered(f.poly, f.source == decay_factor::source_t::noise ? a : b);
                prod = first ? factor : (prod * factor).eval();
                first = false;
            }
            acc += std::abs(prod.trace()) / n;
        }
        out.emplace_back(n, acc / tmpl.reps);
    }
    return out;
}

} // namespace freeprob
