#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "potts/bounds.hpp"
#include "potts/exact.hpp"
#include "potts/mc.hpp"
#include "potts/parallel.hpp"
#include "potts/rng.hpp"

namespace potts::acceptance {

namespace {

struct Verdict {
    bool passed = true;
    std::string detail;
};

std::string fmt(double value, int precision = 6) {
    std::ostringstream out;
    out << std::setprecision(precision) << value;
    return out.str();
}

// 1. min_kappa_threshold at the 2/(3 sqrt pi) slope is exactly 58 and
//    kappa = 57 has an empty beta interval.
Verdict criterion_threshold_58(const Options&) {
    Verdict v;
    const int threshold = bounds::min_kappa_threshold(bounds::kRsLowerSlope);
    const bool empty_at_57 =
        !bounds::beta_interval(57, bounds::kRsLowerSlope).has_value();
    v.passed = threshold == 58 && empty_at_57;
    v.detail = "min_kappa = " + std::to_string(threshold) +
               ", kappa=57 interval " + (empty_at_57 ? "empty" : "NON-EMPTY");
    return v;
}

// 2. The sharper SK ground-state slope moves the threshold to 21.
Verdict criterion_threshold_21(const Options&) {
    Verdict v;
    const int threshold =
        bounds::min_kappa_threshold(bounds::kSkGroundStateSlope);
    v.passed = threshold == 21;
    v.detail = "min_kappa = " + std::to_string(threshold) + " at c = " +
               fmt(bounds::kSkGroundStateSlope, 10);
    return v;
}

// 3. Per-disorder kappa = 2 log-partition equals the SK expression at
//    half the inverse temperature, within 1e-10, 100 disorders per N.
Verdict criterion_sk_identity(const Options& options) {
    Verdict v;
    constexpr double kTol = 1e-10;
    const double betas[4] = {0.5, 1.0, 2.0, 5.0};
    double worst = 0.0;
    for (int n = 2; n <= 10; ++n) {
        std::vector<double> gap(100);
        parallel_for_index(100, options.threads, [&](std::size_t i) {
            const auto disorder = DisorderSample::generate(
                n, derive_stream(0xC3, {static_cast<std::uint64_t>(n), i}));
            const double beta = betas[i % 4];
            const ModelParams params{n, 2, beta, 0.0};
            const double potts_side = log_partition(params, disorder);
            const double sk_side =
                sk_log_partition(disorder, beta / 2.0) +
                (beta / 2.0) * disorder.total_sum() / std::pow(n, 1.5);
            gap[i] = std::abs(potts_side - sk_side);
        });
        for (double g : gap) worst = std::max(worst, g);
    }
    v.passed = worst <= kTol;
    v.detail = "max |potts - sk| = " + fmt(worst, 3) + " (tol 1e-10)";
    return v;
}

// 4. beta = 0 quenched free energy is log kappa with zero variance.
Verdict criterion_beta_zero(const Options& options) {
    Verdict v;
    double worst_mean = 0.0, worst_se = 0.0;
    for (const auto& [n, kappa] : std::vector<std::pair<int, int>>{
             {3, 2}, {5, 3}, {6, 4}, {2, 7}}) {
        const ModelParams params{n, kappa, 0.0, 0.0};
        const auto estimate = quenched_free_energy(
            params, 64, 0xB0, std::nullopt, kDefaultEnumerationBudget,
            options.threads);
        worst_mean = std::max(worst_mean,
                              std::abs(estimate.mean - std::log(kappa)));
        worst_se = std::max(worst_se, estimate.std_error);
    }
    // 5e-14 absorbs the rounding of averaging identical per-disorder
    // values; the estimator itself sums bit-identical terms.
    v.passed = worst_mean <= 5e-14 && worst_se <= 1e-15;
    v.detail = "max |mean - log k| = " + fmt(worst_mean, 3) +
               ", max std_error = " + fmt(worst_se, 3);
    return v;
}

// 5. Exact-enumeration quenched estimates respect the finite-size lower
//    bound mean + 4 se >= ((N-1)/N)^{3/2} * 2 beta / (3 sqrt pi).
Verdict criterion_lower_bound(const Options& options) {
    Verdict v;
    double worst_margin = 1e300;
    for (int n : {4, 6, 8}) {
        for (int kappa : {2, 3}) {
            for (double beta : {0.5, 1.0, 2.0}) {
                const ModelParams params{n, kappa, beta, 0.0};
                const auto estimate = quenched_free_energy(
                    params, 500,
                    derive_stream(0xF5, {static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(kappa)}),
                    std::nullopt, kDefaultEnumerationBudget, options.threads);
                const double target = bounds::lower_bound(n, beta);
                const double margin =
                    estimate.mean + 4.0 * estimate.std_error - target;
                worst_margin = std::min(worst_margin, margin);
                if (margin < 0.0) v.passed = false;
            }
        }
    }
    v.detail = "min (mean + 4se - bound) = " + fmt(worst_margin, 4);
    return v;
}

// 6. rs_gaussian_value agrees with log kappa + beta^2/(2 kappa) within
//    4 standard errors, 1e6 samples per grid point.
Verdict criterion_rs_gaussian(const Options&) {
    Verdict v;
    double worst_pull = 0.0;
    for (int kappa : {2, 4, 8, 58}) {
        for (double beta : {0.0, 1.0, 5.0, 20.0}) {
            const auto [estimate, std_error] = bounds::rs_gaussian_value(
                kappa, beta, 1000000,
                derive_stream(0x65, {static_cast<std::uint64_t>(kappa),
                                     static_cast<std::uint64_t>(beta)}));
            const double gap =
                std::abs(estimate - bounds::rs_upper_bound(kappa, beta));
            if (std_error == 0.0) {
                if (gap > 1e-12) v.passed = false;
            } else {
                const double pull = gap / std_error;
                worst_pull = std::max(worst_pull, pull);
                if (pull > 4.0) v.passed = false;
            }
        }
    }
    v.detail = "max |estimate - closed form| / se = " + fmt(worst_pull, 3) +
               " (limit 4)";
    return v;
}

// 7. Thermodynamic integration matches exact enumeration within 0.02
//    per disorder at N = 8, kappa = 3, beta = 1, on 20 disorders.
Verdict criterion_mc_vs_oracle(const Options& options) {
    Verdict v;
    const ModelParams params{8, 3, 1.0, 0.0};
    std::vector<double> gap(20);
    parallel_for_index(20, options.threads, [&](std::size_t i) {
        const auto disorder =
            DisorderSample::generate(8, derive_stream(0x07, {i}));
        const auto ladder = LadderConfig::hybrid(1.0, 32, 5, 4000, 1000);
        const auto result =
            thermo_integrate(params, disorder, ladder, derive_stream(0x70, {i}));
        gap[i] = std::abs(result.free_energy - log_partition(params, disorder));
    });
    double worst = 0.0;
    for (double g : gap) worst = std::max(worst, g);
    v.passed = worst <= 0.02;
    v.detail = "max |thermo - exact| = " + fmt(worst, 4) + " (tol 0.02)";
    return v;
}

// 8. Annealing matches the exact ground state on >= 95% of instances and
//    never exceeds it; same for the sector-restricted search.
Verdict criterion_ground_state(const Options& options) {
    Verdict v;
    int free_hits = 0, sector_hits = 0;
    bool never_exceeds = true;

    std::vector<int> free_match(100, 0);
    std::vector<int> free_valid(100, 0);
    parallel_for_index(100, options.threads, [&](std::size_t i) {
        const int n = 14;
        const ModelParams params{n, 2, 1.0, 0.0};
        const auto disorder =
            DisorderSample::generate(n, derive_stream(0x08, {i}));
        const auto [exact_sigma, exact_value] =
            exact_ground_state(params, disorder);
        const auto schedule = LadderConfig::hybrid(6.0, 24, 4, 1, 0);
        const auto [sigma, value] =
            anneal_ground_state(params, disorder, schedule, 8, i);
        free_valid[i] = value <= exact_value + 1e-9;
        free_match[i] = std::abs(value - exact_value) <= 1e-9;
    });
    for (int i = 0; i < 100; ++i) {
        free_hits += free_match[i];
        never_exceeds = never_exceeds && free_valid[i];
    }

    std::vector<int> sector_match(100, 0);
    std::vector<int> sector_valid(100, 0);
    parallel_for_index(100, options.threads, [&](std::size_t i) {
        const int n = 12, kappa = 3;
        const ModelParams params{n, kappa, 1.0, 0.0};
        const auto disorder =
            DisorderSample::generate(n, derive_stream(0x85, {i}));
        const ColorProfile profile{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.1};
        const auto [exact_sigma, exact_value] =
            exact_ground_state(params, disorder, profile);
        const auto schedule = LadderConfig::hybrid(6.0, 24, 5, 1, 0);
        const double value = estimate_sector_max(params, disorder, profile,
                                                 schedule, 10, i);
        sector_valid[i] = value <= exact_value + 1e-9;
        sector_match[i] = std::abs(value - exact_value) <= 1e-9;
    });
    for (int i = 0; i < 100; ++i) {
        sector_hits += sector_match[i];
        never_exceeds = never_exceeds && sector_valid[i];
    }

    v.passed = free_hits >= 95 && sector_hits >= 95 && never_exceeds;
    v.detail = "free " + std::to_string(free_hits) + "/100, sector " +
               std::to_string(sector_hits) + "/100, never exceeds: " +
               (never_exceeds ? "yes" : "NO");
    return v;
}

// 9. The ground-state sandwich lower <= log_partition <= lower + log k
//    holds on every tested (disorder, beta, profile), including beta = 50.
Verdict criterion_sandwich(const Options&) {
    Verdict v;
    int tested = 0;
    GaussianRng profile_rng(0x95EC);
    for (int kappa : {2, 3}) {
        for (double beta : {0.0, 0.5, 2.0, 10.0, 50.0}) {
            for (int rep = 0; rep < 3; ++rep) {
                const int n = 5;
                const ModelParams params{n, kappa, beta, 0.0};
                const auto disorder = DisorderSample::generate(
                    n, derive_stream(0x09, {static_cast<std::uint64_t>(tested)}));
                std::vector<double> d(kappa);
                double total = 0.0;
                for (double& dk : d) {
                    dk = 0.2 + profile_rng.uniform();
                    total += dk;
                }
                double partial = 0.0;
                for (int k = 0; k + 1 < kappa; ++k) {
                    d[k] /= total;
                    partial += d[k];
                }
                d[kappa - 1] = 1.0 - partial;
                const ColorProfile profile{d, 0.3};
                const auto bounds_result =
                    beta_slope_check(params, disorder, profile);
                if (!(bounds_result.log_partition >= bounds_result.lower &&
                      bounds_result.log_partition <=
                          bounds_result.upper + 1e-12))
                    v.passed = false;
                ++tested;
            }
        }
    }
    v.detail = std::to_string(tested) + " (disorder, beta, profile) instances";
    return v;
}

// 10. Criterion <=> interval membership on a dense grid; at kappa = 58
//     the interval endpoints equate the two bounds within 1e-9.
Verdict criterion_region_coherence(const Options&) {
    Verdict v;
    for (int kappa = 2; kappa <= 120 && v.passed; ++kappa) {
        const auto window = bounds::beta_interval(kappa, bounds::kRsLowerSlope);
        for (double beta = 0.0; beta <= 50.0; beta += 0.173) {
            const bool by_criterion = bounds::symmetry_breaking_criterion(
                {kappa, beta, bounds::kRsLowerSlope});
            const bool by_interval =
                window && window->first < beta && beta < window->second;
            if (by_criterion != by_interval) {
                v.passed = false;
                break;
            }
        }
    }
    double worst_endpoint_gap = 0.0;
    const auto window = bounds::beta_interval(58, bounds::kRsLowerSlope);
    if (!window) {
        v.passed = false;
    } else {
        for (double beta : {window->first, window->second}) {
            worst_endpoint_gap = std::max(
                worst_endpoint_gap,
                std::abs(bounds::lower_bound_limit(beta) -
                         bounds::rs_upper_bound(58, beta)));
        }
        if (worst_endpoint_gap > 1e-9) v.passed = false;
    }
    v.detail = "endpoint |lower - upper| = " + fmt(worst_endpoint_gap, 3) +
               " (tol 1e-9)";
    return v;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict(const Options&)> check;
};

const Criterion kCriteria[] = {
    {1, "threshold-58", criterion_threshold_58},
    {2, "threshold-21", criterion_threshold_21},
    {3, "sk-identity", criterion_sk_identity},
    {4, "beta-zero-exactness", criterion_beta_zero},
    {5, "finite-size-lower-bound", criterion_lower_bound},
    {6, "rs-gaussian-identity", criterion_rs_gaussian},
    {7, "mc-vs-oracle", criterion_mc_vs_oracle},
    {8, "ground-state-equivalence", criterion_ground_state},
    {9, "sandwich", criterion_sandwich},
    {10, "region-coherence", criterion_region_coherence},
};

}  // namespace

std::vector<CriterionResult> run(const Options& options) {
    std::vector<CriterionResult> results;
    for (const auto& criterion : kCriteria) {
        if (options.only != 0 && options.only != criterion.id) continue;
        CriterionResult result;
        result.id = criterion.id;
        result.name = criterion.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Verdict verdict = criterion.check(options);
            result.passed = verdict.passed;
            result.detail = verdict.detail;
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = std::string("exception: ") + e.what();
        }
        result.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        results.push_back(std::move(result));
    }
    return results;
}

void print_report(std::ostream& out,
                  const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name
            << " (" << std::fixed << std::setprecision(2) << r.seconds
            << " s): " << r.detail << "\n";
        out.unsetf(std::ios_base::floatfield);
    }
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

}  // namespace potts::acceptance
