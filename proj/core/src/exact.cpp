#include "potts/exact.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "potts/parallel.hpp"
#include "potts/rng.hpp"

namespace potts {

namespace {

/// Streaming log-sum-exp accumulator. After the first insert the running
/// sum always contains exp(0) = 1 for the max term, so value() >= max().
class LogSumExp {
public:
    void add(double x) {
        if (count_ == 0 || x > max_) {
            scaled_sum_ = count_ == 0 ? 1.0
                                      : scaled_sum_ * std::exp(max_ - x) + 1.0;
            max_ = x;
        } else {
            scaled_sum_ += std::exp(x - max_);
        }
        ++count_;
    }

    std::uint64_t count() const noexcept { return count_; }
    double max() const noexcept { return max_; }
    double log_sum() const noexcept { return scaled_sum_; }
    double value() const { return max_ + std::log(scaled_sum_); }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double scaled_sum_ = 0.0;
    std::uint64_t count_ = 0;
};

/// Tracks whether the color counts stay inside the sector, updating only
/// the two colors touched by a recolor.
class SectorTracker {
public:
    SectorTracker(const ColorProfile& profile, const SpinConfiguration& sigma)
        : profile_(&profile), n_(sigma.size()) {
        ok_.resize(sigma.kappa());
        for (int k = 0; k < sigma.kappa(); ++k) {
            ok_[k] = within(k, sigma.count(k));
            if (!ok_[k]) ++violations_;
        }
    }

    bool inside() const noexcept { return violations_ == 0; }

    void on_recolor(const SpinConfiguration& sigma, int old_color,
                    int new_color) {
        update(old_color, sigma.count(old_color));
        update(new_color, sigma.count(new_color));
    }

private:
    bool within(int k, int count) const {
        const double proportion = static_cast<double>(count) / n_;
        return std::abs(proportion - profile_->d[k]) <= profile_->epsilon;
    }

    void update(int k, int count) {
        const bool now = within(k, count);
        if (now != static_cast<bool>(ok_[k])) {
            violations_ += now ? -1 : 1;
            ok_[k] = now;
        }
    }

    const ColorProfile* profile_;
    double n_;
    std::vector<char> ok_;
    int violations_ = 0;
};

void check_budget(double needed, std::uint64_t budget) {
    if (needed > static_cast<double>(budget)) throw BudgetError(needed, budget);
}

constexpr std::uint64_t kEnergyRefreshInterval = 1ull << 16;

/// Odometer over {0,...,kappa-1}^N with site N-1 as the fastest digit,
/// i.e. lexicographic order on color sequences. Calls
/// visit(sigma, h, bias) for every configuration inside the sector (or
/// every configuration when profile is null). The cached energy h is
/// refreshed from a full recomputation at a fixed interval to stop
/// incremental drift on long enumerations.
template <typename Visitor>
void enumerate_configurations(const ModelParams& params,
                              const DisorderSample& disorder,
                              const ColorProfile* profile,
                              std::uint64_t budget, Visitor&& visit) {
    params.validate();
    if (disorder.size() != params.N)
        throw DimensionError("disorder", params.N, disorder.size());
    if (profile) {
        profile->validate();
        if (static_cast<int>(profile->d.size()) != params.kappa)
            throw DimensionError("profile.d", params.kappa, profile->d.size());
    }
    check_budget(std::pow(static_cast<double>(params.kappa), params.N), budget);

    const int n = params.N;
    const int kappa = params.kappa;
    SpinConfiguration sigma = SpinConfiguration::uniform(n, kappa);
    double h = energy(params, disorder, sigma);
    std::int64_t bias = bias_term(sigma);
    std::optional<SectorTracker> sector;
    if (profile) sector.emplace(*profile, sigma);

    std::uint64_t visited = 0;
    for (;;) {
        if (!sector || sector->inside()) visit(sigma, h, bias);
        if (++visited % kEnergyRefreshInterval == 0)
            h = energy(params, disorder, sigma);

        // Advance the odometer, updating energy, bias and sector state
        // per digit change.
        int site = n - 1;
        while (site >= 0) {
            const int old_color = sigma.color(site);
            const int new_color = old_color + 1 == kappa ? 0 : old_color + 1;
            h += recolor_delta(disorder, sigma, site, new_color);
            bias += 2 * static_cast<std::int64_t>(sigma.count(new_color) -
                                                  sigma.count(old_color)) +
                    2;
            sigma.recolor(site, new_color);
            if (sector) sector->on_recolor(sigma, old_color, new_color);
            if (new_color != 0) break;  // no carry
            --site;
        }
        if (site < 0) return;  // wrapped around to all zeros
    }
}

double gauged_exponent(const ModelParams& params, double h,
                       std::int64_t bias) {
    return params.beta * h +
           params.beta * params.gamma / params.N * static_cast<double>(bias);
}

}  // namespace

double log_partition(const ModelParams& params, const DisorderSample& disorder,
                     const std::optional<ColorProfile>& profile,
                     std::uint64_t budget) {
    LogSumExp lse;
    enumerate_configurations(
        params, disorder, profile ? &*profile : nullptr, budget,
        [&](const SpinConfiguration&, double h, std::int64_t bias) {
            lse.add(gauged_exponent(params, h, bias));
        });
    if (lse.count() == 0) throw EmptySectorError();
    return lse.value() / params.N;
}

QuenchedEstimate quenched_free_energy(const ModelParams& params,
                                      int num_samples, std::uint64_t seed,
                                      const std::optional<ColorProfile>& profile,
                                      std::uint64_t budget, unsigned threads) {
    params.validate();
    if (num_samples < 1)
        throw InvalidValueError("num_samples", "must be >= 1");

    std::vector<double> values(num_samples);
    parallel_for_index(num_samples, threads, [&](std::size_t i) {
        const auto sample = DisorderSample::generate(
            params.N, derive_stream(seed, {static_cast<std::uint64_t>(i)}));
        values[i] = log_partition(params, sample, profile, budget);
    });

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= num_samples;

    double std_error = 0.0;
    if (num_samples > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        std_error = std::sqrt(ss / (num_samples - 1)) /
                    std::sqrt(static_cast<double>(num_samples));
    }

    QuenchedEstimate estimate;
    estimate.mean = mean;
    estimate.std_error = std_error;
    estimate.num_disorder_samples = num_samples;
    estimate.params = params;
    return estimate;
}

std::pair<SpinConfiguration, double> exact_ground_state(
    const ModelParams& params, const DisorderSample& disorder,
    const std::optional<ColorProfile>& profile, std::uint64_t budget) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_colors;
    bool found = false;

    const auto exact_objective = [&](const SpinConfiguration& sigma) {
        return energy(params, disorder, sigma) +
               params.gamma / params.N * static_cast<double>(bias_term(sigma));
    };

    enumerate_configurations(
        params, disorder, profile ? &*profile : nullptr, budget,
        [&](const SpinConfiguration& sigma, double h, std::int64_t bias) {
            const double objective =
                h + params.gamma / params.N * static_cast<double>(bias);
            const double tie_eps = 1e-9 * (1.0 + std::abs(best));
            if (!found || objective > best - tie_eps) {
                // Re-evaluate exactly so that color-symmetric duplicates
                // compare bit-for-bit and lexicographic order decides.
                const double exact_value = exact_objective(sigma);
                if (!found || exact_value > best) {
                    best = exact_value;
                    best_colors = sigma.colors();
                    found = true;
                }
            }
        });
    if (!found) throw EmptySectorError();
    return {SpinConfiguration(std::move(best_colors), params.kappa), best};
}

SlopeBounds beta_slope_check(const ModelParams& params,
                             const DisorderSample& disorder,
                             const ColorProfile& profile,
                             std::uint64_t budget) {
    LogSumExp lse;
    enumerate_configurations(
        params, disorder, &profile, budget,
        [&](const SpinConfiguration&, double h, std::int64_t bias) {
            lse.add(gauged_exponent(params, h, bias));
        });
    if (lse.count() == 0) throw EmptySectorError();

    SlopeBounds bounds;
    bounds.lower = lse.max() / params.N;
    bounds.upper = bounds.lower + std::log(static_cast<double>(params.kappa));
    bounds.log_partition = lse.value() / params.N;

    if (bounds.log_partition < bounds.lower)
        throw Error("sandwich violated: log_partition below ground-state bound");
    if (bounds.log_partition > bounds.upper + 1e-12)
        throw Error("sandwich violated: log_partition above entropy bound");
    return bounds;
}

double sk_log_partition(const DisorderSample& disorder, double beta_sk,
                        std::uint64_t budget) {
    const int n = disorder.size();
    if (n > 62) throw BudgetError(std::pow(2.0, n), budget);
    const std::uint64_t total = 1ull << n;
    check_budget(static_cast<double>(total), budget);

    LogSumExp lse;
    std::vector<int> spins(n);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n; ++i)
            spins[i] = (mask >> i) & 1 ? -1 : 1;
        lse.add(beta_sk * sk_energy(disorder, spins));
    }
    return lse.value() / n;
}

}  // namespace potts
