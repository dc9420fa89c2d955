// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <freeprob/estimators.hpp>

#include "oracles.hpp"

using namespace freeprob;

namespace {

moment_sequence random_moments(std::mt19937_64& gen, int K) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(K));
    for (auto& x : v)
        x = dist(gen);
    return moment_sequence(std::move(v));
}

double max_abs_diff(const moment_sequence& a, const moment_sequence& b) {
    double d = 0.0;
    for (int k = 1; k <= a.order(); ++k)
        d = std::max(d, std::abs(a.at(k) - b.at(k)));
    return d;
}

} // namespace

TEST_CASE("forward map without noise is the identity") {
    std::mt19937_64 gen(101);
    const auto g = random_moments(gen, 10);
    const auto w = info_noise_forward(g, {0.5, 0.0, 10});
    CHECK(max_abs_diff(w, g) < 1e-12);
}

TEST_CASE("pure noise maps to the scaled sample-covariance law") {
    for (double c : {0.25, 0.5, 2.0}) {
        const auto w = info_noise_forward(moments_of(point_mass{0.0}, 6), {c, 1.0, 6});
        CHECK(max_abs_diff(w, moments_of(marchenko_pastur{c}, 6)) < 1e-12);
        // general noise variance scales moment k by sigma2^k
        const double s2 = 0.25;
        const auto ws = info_noise_forward(moments_of(point_mass{0.0}, 6), {c, s2, 6});
        double p = 1.0;
        for (int k = 1; k <= 6; ++k) {
            p *= s2;
            CHECK(ws.at(k) == Catch::Approx(p * moments_of(marchenko_pastur{c}, 6).at(k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("forward and inverse are exact moment-arithmetic inverses") {
    std::mt19937_64 gen(102);
    for (int t = 0; t < 50; ++t) {
        const auto g = random_moments(gen, 10);
        const info_noise_params p{0.25 + 0.5 * (t % 4), 0.1 + 0.2 * (t % 3), 10};
        CHECK(max_abs_diff(info_noise_inverse(info_noise_forward(g, p), p), g) < 1e-10);
    }
}

TEST_CASE("denoising the pure-noise spectrum recovers the zero signal") {
    const auto w = moments_of(marchenko_pastur{0.5}, 6);
    const auto g = info_noise_inverse(w, {0.5, 1.0, 6});
    for (int k = 1; k <= 6; ++k)
        CHECK(g.at(k) == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("first moment shifts by the noise variance, exactly") {
    std::mt19937_64 gen(103);
    const auto g = random_moments(gen, 6);
    const info_noise_params p{0.5, 0.3, 6};
    CHECK(info_noise_forward(g, p).at(1) == g.at(1) + 0.3);
}

TEST_CASE("degree scaling homogeneity is bitwise for power-of-two factors") {
    std::mt19937_64 gen(104);
    const auto g = random_moments(gen, 8);
    const double s = 2.0;
    std::vector<double> scaled(g.m);
    double p = 1.0;
    for (auto& x : scaled) {
        p *= s;
        x *= p;
    }
    const auto w = info_noise_forward(g, {0.5, 0.25, 8});
    const auto ws = info_noise_forward(moment_sequence(scaled), {0.5, 0.25 * s, 8});
    p = 1.0;
    for (int k = 1; k <= 8; ++k) {
        p *= s;
        CHECK(ws.at(k) == p * w.at(k));
    }
}

TEST_CASE("series route of the forward map matches the fixed point") {
    const atomic_measure gamma({{1.0, 0.5}, {3.0, 0.5}});
    const double c = 0.5, s2 = 0.25;
    const auto w = info_noise_forward(moments_of(law{gamma}, 40), {c, s2, 40});
    const double radius = 4.75; // spectral edge of this fixture is ~4.72
    for (double z : {-10.0, -15.0}) {
        const double series = stieltjes_moments(w, {z, 0.0}, radius).real();
        const double fixed = dozier_silverstein_mw(gamma, c, s2, {z, 0.0}).real();
        CHECK(series == Catch::Approx(fixed).margin(1e-7));
    }
}

TEST_CASE("covariance estimate: vanishing aspect ratio is the plain transform") {
    const atomic_measure mu({{0.5, 0.25}, {1.0, 0.5}, {2.0, 0.25}});
    const auto ms = moments_of(law{mu}, 40);
    const double z = -6.0;
    CHECK(g2_moment_route(ms, 1e-9, z, 2.2) ==
          Catch::Approx(stieltjes_moments(ms, {z, 0.0}, 2.2).real()).margin(1e-6));
    CHECK(g2_fixed_point(mu, 1e-9, z) ==
          Catch::Approx(stieltjes_atoms(mu, {z, 0.0}).real()).margin(1e-6));
}

TEST_CASE("covariance estimate of the ratio-one law recovers the unit point mass") {
    const auto mp1 = moments_of(marchenko_pastur{1.0}, 40);
    CHECK(g2_moment_route(mp1, 1.0, -10.0, 1.1) == Catch::Approx(1.0 / 11.0).margin(1e-9));
}

TEST_CASE("the two covariance-estimate routes agree, with a hand value") {
    // on the unit point mass at z = -3: theta = -2 and both routes give 2/9
    CHECK(g2_fixed_point(point_measure(1.0), 1.0, -3.0) == Catch::Approx(2.0 / 9.0).margin(1e-10));
    const auto d1 = moments_of(point_mass{1.0}, 30);
    CHECK(g2_moment_route(d1, 1.0, -3.0, 1.1) == Catch::Approx(2.0 / 9.0).margin(1e-10));

    const atomic_measure mu({{0.5, 0.3}, {1.0, 0.4}, {2.0, 0.3}});
    const auto ms = moments_of(law{mu}, 60);
    for (double z : {-5.0, -10.0})
        CHECK(g2_moment_route(ms, 0.5, z, 2.0) ==
              Catch::Approx(g2_fixed_point(mu, 0.5, z)).margin(1e-8));
}

TEST_CASE("estimator input validation") {
    std::mt19937_64 gen(105);
    const auto g = random_moments(gen, 4);
    CHECK_THROWS_AS(info_noise_forward(g, {0.0, 0.1, 4}), domain_error);
    CHECK_THROWS_AS(info_noise_forward(g, {0.5, -0.1, 4}), domain_error);
    CHECK_THROWS_AS(info_noise_forward(g, {0.5, 0.1, 6}), domain_error);
    CHECK_THROWS_AS(g2_fixed_point(point_measure(1.0), 0.5, 3.0), domain_error);
    CHECK_THROWS_AS(g2_moment_route(g, 0.5, 3.0, 1.0), domain_error);
}
