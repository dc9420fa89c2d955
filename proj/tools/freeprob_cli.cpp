// SPDX-License-Identifier: Apache-2.0
//
// Command-line frontend. Every subcommand is a thin adapter over the
// library; exit codes: 0 success, 1 domain/solver error, 2 malformed input.
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <freeprob/estimators.hpp>
#include <freeprob/freeconv.hpp>
#include <freeprob/io.hpp>
#include <freeprob/rmtsim.hpp>
#include <freeprob/transforms.hpp>

namespace {

using namespace freeprob;

moment_sequence load_moments(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open input file: " + path);
    return read_moment_file(in);
}

atomic_measure load_atoms(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open input file: " + path);
    return read_atomic_file(in);
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw parse_error("cannot open output file: " + path);
    fn(out);
}

moment_sequence truncate(const moment_sequence& m, int order) {
    if (order <= 0 || order == m.order())
        return m;
    if (order > m.order())
        throw domain_error("requested order exceeds input order");
    return moment_sequence(std::vector<double>(m.m.begin(), m.m.begin() + order));
}

double default_support_bound(const atomic_measure& mu) {
    double b = 0.0;
    for (const auto& a : mu.atoms)
        b = std::max(b, std::abs(a.position));
    return b;
}

// norm bound for the information-plus-noise spectrum, used as the series
// radius in `validate`
double forward_support_bound(const atomic_measure& gamma, double c, double sigma2) {
    const double top = default_support_bound(gamma);
    const double edge = std::sqrt(top) + std::sqrt(sigma2) * (1.0 + std::sqrt(c));
    return edge * edge;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moment-domain free probability toolkit"};
    app.require_subcommand(1);

    std::string input, input2, output;
    int order = 0;
    double c = 0.0;
    double sigma2 = 0.0;
    std::vector<double> zs;
    double support_bound = -1.0;
    std::uint64_t seed = 0;
    int reps = 10;
    int n = 0, N = 0;
    std::vector<int> n_list;
    bool negative_control = false;

    auto add_io = [&](CLI::App* sub, bool needs_input = true) {
        if (needs_input)
            sub->add_option("--input", input, "input file")->required();
        sub->add_option("--output", output, "output file (default: stdout)");
    };

    auto binary_op = [&](const char* name, const char* desc,
                         moment_sequence (*op)(const moment_sequence&, const moment_sequence&)) {
        CLI::App* sub = app.add_subcommand(name, desc);
        add_io(sub);
        sub->add_option("--input2", input2, "second operand file")->required();
        sub->add_option("--order", order, "truncate both operands to this order");
        sub->callback([&, op] {
            const auto a = truncate(load_moments(input), order);
            const auto b = truncate(load_moments(input2), order);
            const auto r = op(a, b);
            with_output(output, [&](std::ostream& os) { write_moments_csv(os, r); });
        });
    };

    binary_op("conv-add", "additive free convolution of two moment files", &add_conv);
    binary_op("deconv-add", "additive free deconvolution", &add_deconv);
    binary_op("conv-mult", "multiplicative free convolution", &mult_conv);
    binary_op("deconv-mult", "multiplicative free deconvolution", &mult_deconv);

    {
        CLI::App* sub = app.add_subcommand("mp-conv",
                                           "multiplicative convolution with the Marchenko-Pastur law");
        add_io(sub);
        sub->add_option("--c", c, "aspect ratio")->required();
        sub->add_option("--order", order, "truncate to this order");
        sub->callback([&] {
            const auto r = mp_conv(truncate(load_moments(input), order), c);
            with_output(output, [&](std::ostream& os) { write_moments_csv(os, r); });
        });
    }
    {
        CLI::App* sub = app.add_subcommand("mp-deconv",
                                           "multiplicative deconvolution by the Marchenko-Pastur law");
        add_io(sub);
        sub->add_option("--c", c, "aspect ratio")->required();
        sub->add_option("--order", order, "truncate to this order");
        sub->callback([&] {
            const auto r = mp_deconv(truncate(load_moments(input), order), c);
            with_output(output, [&](std::ostream& os) { write_moments_csv(os, r); });
        });
    }
    {
        CLI::App* sub = app.add_subcommand("info-noise",
                                           "predict observed-spectrum moments from signal moments");
        add_io(sub);
        sub->add_option("--c", c, "aspect ratio")->required();
        sub->add_option("--sigma2", sigma2, "noise variance (default 0)");
        sub->add_option("--order", order, "moment order (default: input order)");
        sub->callback([&] {
            const auto g = load_moments(input);
            const info_noise_params p{c, sigma2, order > 0 ? order : g.order()};
            const auto r = info_noise_forward(g, p);
            with_output(output, [&](std::ostream& os) { write_moments_csv(os, r); });
        });
    }
    {
        CLI::App* sub = app.add_subcommand("denoise",
                                           "recover signal moments from observed-spectrum moments");
        add_io(sub);
        sub->add_option("--c", c, "aspect ratio")->required();
        sub->add_option("--sigma2", sigma2, "noise variance (default 0)");
        sub->add_option("--order", order, "moment order (default: input order)");
        sub->callback([&] {
            const auto w = load_moments(input);
            const info_noise_params p{c, sigma2, order > 0 ? order : w.order()};
            const auto r = info_noise_inverse(w, p);
            with_output(output, [&](std::ostream& os) { write_moments_csv(os, r); });
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "g2", "covariance Stieltjes estimate from an empirical spectrum file");
        add_io(sub);
        sub->add_option("--c", c, "aspect ratio")->required();
        sub->add_option("--z", zs, "evaluation points (negative real)")->required();
        sub->add_option("--order", order, "moment order for the series route (default 40)");
        sub->add_option("--support-bound", support_bound,
                        "support radius of the deconvolved sequence; enables the series route");
        sub->callback([&] {
            const auto mu = load_atoms(input);
            const bool with_series = support_bound >= 0.0;
            const int K = order > 0 ? order : 40;
            with_output(output, [&](std::ostream& os) {
                os << (with_series ? "z,g2_fixed_point,g2_moment_route\n" : "z,g2_fixed_point\n");
                for (double z : zs) {
                    os << format_full(z) << ',' << format_full(g2_fixed_point(mu, c, z));
                    if (with_series) {
                        const auto ms = moments_of(mu, K);
                        os << ',' << format_full(g2_moment_route(ms, c, z, support_bound));
                    }
                    os << '\n';
                }
            });
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "simulate", "seeded Monte Carlo of an information-plus-noise ensemble");
        add_io(sub);
        sub->add_option("--n", n, "rows")->required();
        sub->add_option("--N", N, "columns")->required();
        sub->add_option("--sigma2", sigma2, "noise variance (default 0)");
        sub->add_option("--seed", seed, "RNG seed")->required();
        sub->add_option("--reps", reps, "repetitions (default 10)");
        sub->add_option("--order", order, "moment order (default 6)");
        sub->callback([&] {
            ensemble_spec spec;
            spec.n = n;
            spec.N = N;
            spec.sigma2 = sigma2;
            spec.gamma_spectrum = load_atoms(input);
            spec.seed = seed;
            spec.reps = reps;
            spec.order = order > 0 ? order : 6;
            const auto est = simulate_info_noise(spec);
            with_output(output, [&](std::ostream& os) {
                write_estimate_csv(os, est.mean, est.std_error);
            });
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "mixed-decay", "alternating centered-product statistic across dimensions");
        add_io(sub);
        sub->add_option("--n", n_list, "dimension list")->required();
        sub->add_option("--c", c, "aspect ratio (N = n/c)")->required();
        sub->add_option("--seed", seed, "RNG seed")->required();
        sub->add_option("--reps", reps, "repetitions (default 10)");
        sub->add_flag("--negative-control", negative_control,
                      "use the noise matrix in every slot (identical factors)");
        sub->callback([&] {
            ensemble_spec tmpl;
            tmpl.n = 1000;
            tmpl.N = static_cast<int>(std::llround(1000.0 / c));
            tmpl.sigma2 = 0.0;
            tmpl.gamma_spectrum = load_atoms(input);
            tmpl.seed = seed;
            tmpl.reps = reps;
            tmpl.order = 1;
            const decay_factor::source_t second = negative_control
                                                      ? decay_factor::source_t::noise
                                                      : decay_factor::source_t::signal;
            const std::vector<decay_factor> pattern{
                {decay_factor::source_t::noise, {0.0, 1.0}},
                {second, {0.0, 1.0}},
            };
            const auto rows = mixed_moment_decay(n_list, tmpl, pattern);
            with_output(output, [&](std::ostream& os) {
                os << "n,value\n";
                for (const auto& [dim, value] : rows)
                    os << dim << ',' << format_full(value) << '\n';
            });
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "validate", "cross-route checks: series-vs-fixed-point spectrum map and the two "
                        "covariance-estimate routes");
        add_io(sub);
        sub->add_option("--c", c, "aspect ratio")->required();
        sub->add_option("--sigma2", sigma2, "noise variance (default 0)");
        sub->add_option("--z", zs, "evaluation points (default -8 -10 -15)");
        sub->add_option("--order", order, "moment order (default 40)");
        sub->add_option("--support-bound", support_bound,
                        "series radius for the deconvolved sequence (default: max atom)");
        sub->callback([&] {
            const auto mu = load_atoms(input);
            const int K = order > 0 ? order : 40;
            const std::vector<double> points = zs.empty() ? std::vector<double>{-8, -10, -15} : zs;
            const auto gm = moments_of(mu, K);
            const info_noise_params p{c, sigma2, K};
            const auto wm = info_noise_forward(gm, p);
            const double wbound = forward_support_bound(mu, c, sigma2);
            const double dbound = support_bound >= 0.0 ? support_bound : default_support_bound(mu);
            bool all_pass = true;
            with_output(output, [&](std::ostream& os) {
                os << "check,z,route_a,route_b,abs_diff,pass\n";
                for (double z : points) {
                    const double a =
                        stieltjes_moments(wm, complexd(z, 0.0), wbound).real();
                    const double b = dozier_silverstein_mw(mu, c, sigma2, complexd(z, 0.0)).real();
                    const bool pass = std::abs(a - b) < 1e-7;
                    all_pass = all_pass && pass;
                    os << "info-noise-map," << format_full(z) << ',' << format_full(a) << ','
                       << format_full(b) << ',' << format_full(std::abs(a - b)) << ','
                       << (pass ? "1" : "0") << '\n';
                }
                for (double z : points) {
                    const double a = g2_moment_route(gm, c, z, dbound);
                    const double b = g2_fixed_point(mu, c, z);
                    const bool pass = std::abs(a - b) < 1e-6;
                    all_pass = all_pass && pass;
                    os << "g2-routes," << format_full(z) << ',' << format_full(a) << ','
                       << format_full(b) << ',' << format_full(std::abs(a - b)) << ','
                       << (pass ? "1" : "0") << '\n';
                }
            });
            if (!all_pass)
                throw solver_error("cross-route check failed tolerance");
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "invocation error: " << e.what() << '\n';
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
