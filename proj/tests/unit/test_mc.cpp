#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>
#include <random>

#include "helpers.hpp"
#include "potts/exact.hpp"
#include "potts/mc.hpp"
#include "potts/parallel.hpp"

using namespace potts;
using namespace potts::testing;

TEST_CASE("LadderConfig: validation and hybrid construction") {
    LadderConfig missing_zero;
    missing_zero.betas = {0.5, 1.0};
    CHECK_THROWS_AS(missing_zero.validate(), InvalidValueError);
    LadderConfig not_increasing;
    not_increasing.betas = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(not_increasing.validate(), InvalidValueError);
    const auto ladder = LadderConfig::hybrid(2.0, 16);
    CHECK(ladder.betas.size() == 16);
    CHECK(ladder.betas.front() == 0.0);
    CHECK(ladder.betas.back() == 2.0);
    ladder.validate();
    // Denser near zero than at the top.
    CHECK(ladder.betas[1] - ladder.betas[0] <
          ladder.betas[15] - ladder.betas[14]);
}

TEST_CASE("gibbs_sweep: beta = 0 samples colors uniformly") {
    const int n = 10, kappa = 3;
    const ModelParams params{n, kappa, 0.0, 0.0};
    const auto disorder = DisorderSample::generate(n, 3);
    ChainState chain(params, disorder, 0.0, 12345);
    chain.randomize(params, disorder);
    SweepWorkspace workspace(disorder, kappa);

    std::array<std::int64_t, 3> tally{};
    const int sweeps = 20000;
    for (int s = 0; s < sweeps; ++s) {
        gibbs_sweep(chain, params, disorder, workspace);
        for (int k = 0; k < kappa; ++k) tally[k] += chain.sigma().count(k);
    }
    const double total = static_cast<double>(sweeps) * n;
    const double p = 1.0 / kappa;
    const double sigma4 = 4.0 * std::sqrt(p * (1.0 - p) / total);
    for (int k = 0; k < kappa; ++k)
        CHECK(std::abs(tally[k] / total - p) <= sigma4);
}

TEST_CASE("gibbs_sweep: counts stay consistent with colors") {
    const int n = 9, kappa = 4;
    const ModelParams params{n, kappa, 0.7, 0.2};
    const auto disorder = DisorderSample::generate(n, 8);
    ChainState chain(params, disorder, 0.7, 99);
    chain.randomize(params, disorder);
    SweepWorkspace workspace(disorder, kappa);
    for (int s = 0; s < 200; ++s) {
        gibbs_sweep(chain, params, disorder, workspace);
        int total = 0;
        std::vector<int> recount(kappa, 0);
        for (int i = 0; i < n; ++i) ++recount[chain.sigma().color(i)];
        for (int k = 0; k < kappa; ++k) {
            CHECK(recount[k] == chain.sigma().count(k));
            total += recount[k];
        }
        CHECK(total == n);
    }
}

TEST_CASE("gibbs_sweep: stationary distribution matches exact Gibbs") {
    // N = 2, kappa = 2: four states, exact weights from the gauged energy.
    const int n = 2;
    const ModelParams params{n, 2, 0.9, 0.0};
    const auto disorder = DisorderSample::generate(n, 21);
    ChainState chain(params, disorder, 0.9, 777);
    chain.randomize(params, disorder);
    SweepWorkspace workspace(disorder, 2);

    std::map<std::pair<int, int>, double> weight;
    double z = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const SpinConfiguration sigma({a, b}, 2);
            const double w =
                std::exp(params.beta * energy(params, disorder, sigma));
            weight[{a, b}] = w;
            z += w;
        }
    }

    std::map<std::pair<int, int>, std::int64_t> hits;
    const int samples = 120000;
    for (int s = 0; s < samples; ++s) {
        for (int inner = 0; inner < 3; ++inner)
            gibbs_sweep(chain, params, disorder, workspace);
        ++hits[{chain.sigma().color(0), chain.sigma().color(1)}];
    }
    for (const auto& [state, w] : weight) {
        const double p = w / z;
        const double empirical =
            static_cast<double>(hits[state]) / samples;
        const double sigma4 = 4.0 * std::sqrt(p * (1.0 - p) / samples);
        CHECK(std::abs(empirical - p) <= sigma4 + 0.002);
    }
}

TEST_CASE("energy cache stays within 1e-6 of a recomputation") {
    const int n = 16, kappa = 3;
    const ModelParams params{n, kappa, 0.8, 0.1};
    const auto disorder = DisorderSample::generate(n, 33);
    ChainState chain(params, disorder, 0.8, 5150);
    chain.randomize(params, disorder);
    SweepWorkspace workspace(disorder, kappa);
    for (int s = 0; s < 10000; ++s)
        gibbs_sweep(chain, params, disorder, workspace);
    const double recomputed = energy(params, disorder, chain.sigma());
    CHECK(std::abs(chain.current_energy() - recomputed) <= 1e-6);
    CHECK(chain.current_bias() == bias_term(chain.sigma()));
}

TEST_CASE("parallel tempering preserves per-rung marginals") {
    // Two rungs at beta 0 and 0.8 on a 2-site, 2-color system; the same
    // exchange rule thermo_integrate uses.
    const int n = 2;
    const ModelParams params{n, 2, 0.8, 0.0};
    const auto disorder = DisorderSample::generate(n, 64);
    SweepWorkspace workspace(disorder, 2);
    ChainState cold(params, disorder, 0.8, 1);
    ChainState hot(params, disorder, 0.0, 2);
    cold.randomize(params, disorder);
    hot.randomize(params, disorder);
    GaussianRng exchange_rng(4242);

    auto state_index = [](const SpinConfiguration& sigma) {
        return sigma.color(0) * 2 + sigma.color(1);
    };
    std::array<double, 4> weights_cold{}, hits_cold{}, hits_hot{};
    double z = 0.0;
    for (int idx = 0; idx < 4; ++idx) {
        const SpinConfiguration sigma({idx / 2, idx % 2}, 2);
        weights_cold[idx] =
            std::exp(0.8 * energy(params, disorder, sigma));
        z += weights_cold[idx];
    }

    const int rounds = 60000;
    for (int round = 0; round < rounds; ++round) {
        for (int s = 0; s < 2; ++s) {
            gibbs_sweep(hot, params, disorder, workspace);
            gibbs_sweep(cold, params, disorder, workspace);
        }
        const double log_accept =
            (hot.beta() - cold.beta()) *
            (cold.gauged_energy(params) - hot.gauged_energy(params));
        if (log_accept >= 0.0 ||
            exchange_rng.uniform() < std::exp(log_accept))
            swap_chains(hot, cold);
        ++hits_hot[state_index(hot.sigma())];
        ++hits_cold[state_index(cold.sigma())];
    }
    for (int idx = 0; idx < 4; ++idx) {
        const double p_cold = weights_cold[idx] / z;
        const double sigma4_cold =
            4.0 * std::sqrt(p_cold * (1.0 - p_cold) / rounds);
        CHECK(std::abs(hits_cold[idx] / rounds - p_cold) <=
              sigma4_cold + 0.003);
        const double sigma4_hot = 4.0 * std::sqrt(0.25 * 0.75 / rounds);
        CHECK(std::abs(hits_hot[idx] / rounds - 0.25) <= sigma4_hot + 0.003);
    }
}

TEST_CASE("thermo_integrate: beta = 0 is exactly log kappa") {
    const ModelParams params{8, 3, 0.0, 0.0};
    const auto disorder = DisorderSample::generate(8, 12);
    const auto ladder = LadderConfig::hybrid(0.0, 1, 1, 10, 2);
    const auto result = thermo_integrate(params, disorder, ladder, 5);
    CHECK(result.free_energy == std::log(3.0));
}

TEST_CASE("thermo_integrate: matches exact enumeration within 0.02") {
    const ModelParams params{8, 3, 1.0, 0.0};
    for (std::uint64_t seed : {101ull, 202ull}) {
        const auto disorder = DisorderSample::generate(8, seed);
        const auto ladder = LadderConfig::hybrid(1.0, 32, 5, 4000, 1000);
        const auto result = thermo_integrate(params, disorder, ladder, seed);
        const double exact = log_partition(params, disorder);
        CHECK(std::abs(result.free_energy - exact) <= 0.02);
    }
}

TEST_CASE("thermo_integrate: deterministic for any thread count") {
    const ModelParams params{6, 3, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(6, 404);
    const auto ladder = LadderConfig::hybrid(1.0, 8, 4, 400, 100);
    const auto serial = thermo_integrate(params, disorder, ladder, 777, 1);
    const auto threaded = thermo_integrate(params, disorder, ladder, 777, 4);
    CHECK(serial.free_energy == threaded.free_energy);
    for (std::size_t r = 0; r < serial.trace.size(); ++r) {
        CHECK(serial.trace[r].mean_gauged_energy ==
              threaded.trace[r].mean_gauged_energy);
        CHECK(serial.trace[r].exchange_acceptance ==
              threaded.trace[r].exchange_acceptance);
    }
}

TEST_CASE("thermo_integrate: output convex in the target beta") {
    const ModelParams base{6, 2, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(6, 31);
    const double betas[3] = {1.0, 2.0, 3.0};
    double values[3];
    for (int i = 0; i < 3; ++i) {
        const auto ladder = LadderConfig::hybrid(betas[i], 24, 5, 3000, 800);
        values[i] =
            thermo_integrate(base, disorder, ladder, 9000 + i).free_energy;
    }
    CHECK(values[0] + values[2] - 2.0 * values[1] >= -0.05);
}

TEST_CASE("anneal_ground_state: matches the exact oracle at small N") {
    int exact_hits = 0;
    const int instances = 30;
    for (int instance = 0; instance < instances; ++instance) {
        const int n = 10;
        const ModelParams params{n, 2, 1.0, 0.0};
        const auto disorder = DisorderSample::generate(n, 5000 + instance);
        const auto [exact_sigma, exact_value] =
            exact_ground_state(params, disorder);
        const auto schedule = LadderConfig::hybrid(6.0, 24, 4, 1, 0);
        const auto [annealed_sigma, annealed_value] =
            anneal_ground_state(params, disorder, schedule, 4, instance);
        CHECK(annealed_value <= exact_value + 1e-9);
        if (std::abs(annealed_value - exact_value) <= 1e-9) ++exact_hits;
    }
    CHECK(exact_hits >= 27);
}

TEST_CASE("anneal_ground_state: output is a single-recolor local maximum") {
    const int n = 20, kappa = 3;
    const ModelParams params{n, kappa, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(n, 606);
    const auto schedule = LadderConfig::hybrid(5.0, 16, 3, 1, 0);
    const auto [sigma, value] =
        anneal_ground_state(params, disorder, schedule, 2, 55);
    auto working = sigma;
    for (int site = 0; site < n; ++site) {
        for (int c = 0; c < kappa; ++c) {
            if (c == working.color(site)) continue;
            CHECK(recolor_delta(disorder, working, site, c) <= 1e-9);
        }
    }
}

TEST_CASE("anneal_ground_state: monotone in restarts, deterministic") {
    const int n = 12;
    const ModelParams params{n, 3, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(n, 88);
    const auto schedule = LadderConfig::hybrid(4.0, 12, 3, 1, 0);
    double previous = -1e300;
    for (int restarts = 1; restarts <= 5; ++restarts) {
        const auto [sigma, value] =
            anneal_ground_state(params, disorder, schedule, restarts, 13);
        CHECK(value >= previous);
        previous = value;
    }
    const auto [sigma_a, a] =
        anneal_ground_state(params, disorder, schedule, 3, 13);
    const auto [sigma_b, b] =
        anneal_ground_state(params, disorder, schedule, 3, 13);
    CHECK(a == b);
    CHECK(sigma_a.colors() == sigma_b.colors());
}

TEST_CASE("anneal_ground_state: SK max-energy constant at N = 200") {
    // Via the kappa = 2 mapping, the annealed maximum of the +/-1 energy
    // per spin should reach at least 95% of sqrt(2) * 0.763.
    const int n = 200;
    const ModelParams params{n, 2, 1.0, 0.0};
    double total = 0.0;
    for (int d = 0; d < 10; ++d) {
        const auto disorder = DisorderSample::generate(n, 100 + d);
        const auto schedule = LadderConfig::hybrid(6.0, 24, 4, 1, 0);
        const auto [sigma, value] =
            anneal_ground_state(params, disorder, schedule, 20, d);
        total += sk_energy(disorder, to_sk_spins(sigma)) / n;
    }
    CHECK(total / 10.0 >= 0.95 * std::sqrt(2.0) * 0.763);
}

TEST_CASE("thermo_integrate: quenched average matches exact over 200 disorders") {
    const ModelParams params{8, 3, 1.0, 0.0};
    const int samples = 200;
    std::vector<double> mc(samples);
    potts::parallel_for_index(samples, 2, [&](std::size_t i) {
        const auto disorder =
            DisorderSample::generate(8, derive_stream(42, {i}));
        const auto ladder = LadderConfig::hybrid(1.0, 16, 5, 1500, 500);
        mc[i] = thermo_integrate(params, disorder, ladder,
                                 derive_stream(77, {i}))
                    .free_energy;
    });
    double mc_mean = 0.0;
    for (double v : mc) mc_mean += v;
    mc_mean /= samples;
    double ss = 0.0;
    for (double v : mc) ss += (v - mc_mean) * (v - mc_mean);
    const double mc_se = std::sqrt(ss / (samples - 1)) /
                         std::sqrt(static_cast<double>(samples));

    // Same derivation root, so both estimators see the same disorders.
    const auto exact = quenched_free_energy(params, samples, 42);
    const double combined =
        std::sqrt(mc_se * mc_se + exact.std_error * exact.std_error);
    CHECK(std::abs(mc_mean - exact.mean) <= 4.0 * combined);
}

TEST_CASE("estimate_sector_max: single-configuration sector is exact") {
    const int n = 4, kappa = 3;
    const ModelParams params{n, kappa, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(n, 9);
    const ColorProfile profile{{1.0, 0.0, 0.0}, 0.0};
    const auto schedule = LadderConfig::hybrid(3.0, 8, 2, 1, 0);
    const double value =
        estimate_sector_max(params, disorder, profile, schedule, 2, 31);
    const SpinConfiguration all_first(std::vector<int>(n, 0), kappa);
    CHECK(value == energy(params, disorder, all_first));
}

TEST_CASE("estimate_sector_max: never above, usually equal to, the oracle") {
    int equal = 0;
    const int instances = 20;
    for (int instance = 0; instance < instances; ++instance) {
        const int n = 8, kappa = 3;
        const ModelParams params{n, kappa, 1.0, 0.0};
        const auto disorder = DisorderSample::generate(n, 40000 + instance);
        const ColorProfile profile{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.1};
        const auto [sigma, exact_value] =
            exact_ground_state(params, disorder, profile);
        const auto schedule = LadderConfig::hybrid(6.0, 20, 4, 1, 0);
        const double annealed = estimate_sector_max(params, disorder, profile,
                                                    schedule, 4, instance);
        CHECK(annealed <= exact_value + 1e-9);
        if (std::abs(annealed - exact_value) <= 1e-9) ++equal;
    }
    CHECK(equal >= 18);
}

TEST_CASE("estimate_sector_max: epsilon >= 1 behaves like the free search") {
    int equal = 0;
    for (int instance = 0; instance < 10; ++instance) {
        const int n = 8, kappa = 2;
        const ModelParams params{n, kappa, 1.0, 0.0};
        const auto disorder = DisorderSample::generate(n, 60000 + instance);
        const ColorProfile profile{{0.5, 0.5}, 1.0};
        const auto [sigma, exact_value] = exact_ground_state(params, disorder);
        const auto schedule = LadderConfig::hybrid(6.0, 20, 4, 1, 0);
        const double annealed = estimate_sector_max(params, disorder, profile,
                                                    schedule, 4, instance);
        CHECK(annealed <= exact_value + 1e-9);
        if (std::abs(annealed - exact_value) <= 1e-9) ++equal;
    }
    CHECK(equal >= 9);
}

TEST_CASE("estimate_sector_max: unreachable rounding is an error") {
    const ModelParams params{3, 2, 1.0, 0.0};
    const auto disorder = DisorderSample::generate(3, 2);
    const ColorProfile profile{{0.5, 0.5}, 0.01};
    const auto schedule = LadderConfig::hybrid(2.0, 4, 2, 1, 0);
    CHECK_THROWS_AS(
        estimate_sector_max(params, disorder, profile, schedule, 1, 1),
        Error);
}
