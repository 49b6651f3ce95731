#include "potts/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "potts/parallel.hpp"

namespace potts {

namespace {

constexpr std::uint64_t kExchangeStreamSalt = 0x74656d706572ULL;

double full_gauged_energy(const ModelParams& params,
                          const DisorderSample& disorder,
                          const SpinConfiguration& sigma) {
    return energy(params, disorder, sigma) +
           params.gamma / params.N * static_cast<double>(bias_term(sigma));
}

std::int64_t recolor_bias_delta(const SpinConfiguration& sigma, int old_color,
                                int new_color) {
    return 2 * static_cast<std::int64_t>(sigma.count(new_color) -
                                         sigma.count(old_color)) +
           2;
}

}  // namespace

SweepWorkspace::SweepWorkspace(const DisorderSample& disorder, int kappa)
    : fields(kappa, 0.0),
      weights(kappa, 0.0),
      n_(disorder.size()),
      sym_(detail::symmetrized_couplings(disorder)) {}

ChainState::ChainState(const ModelParams& params,
                       const DisorderSample& disorder, double beta,
                       std::uint64_t stream_seed)
    : sigma_(SpinConfiguration::uniform(params.N, params.kappa)),
      beta_(beta),
      stream_seed_(stream_seed),
      rng_(stream_seed) {
    refresh(params, disorder);
}

void ChainState::randomize(const ModelParams& params,
                           const DisorderSample& disorder) {
    std::vector<int> colors(params.N);
    for (int& c : colors)
        c = static_cast<int>(rng_.below(static_cast<std::uint64_t>(params.kappa)));
    sigma_ = SpinConfiguration(std::move(colors), params.kappa);
    refresh(params, disorder);
}

void ChainState::refresh(const ModelParams& params,
                         const DisorderSample& disorder) {
    energy_ = energy(params, disorder, sigma_);
    bias_ = bias_term(sigma_);
    sweeps_since_refresh_ = 0;
}

void gibbs_sweep(ChainState& state, const ModelParams& params,
                 const DisorderSample& disorder, SweepWorkspace& workspace) {
    const int n = params.N;
    const int kappa = params.kappa;
    const double beta = state.beta_;
    const double bias_coupling = 2.0 * beta * params.gamma / n;
    auto& fields = workspace.fields;
    auto& weights = workspace.weights;

    for (int site = 0; site < n; ++site) {
        detail::local_fields_sym(workspace.sym(), n, state.sigma_, site,
                                 fields);
        const int old_color = state.sigma_.color(site);

        // Exponent of the full conditional, up to a color-independent
        // constant. n'_c is the count of color c with this site removed.
        double max_exponent = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < kappa; ++c) {
            const int removed_count =
                state.sigma_.count(c) - (c == old_color ? 1 : 0);
            weights[c] = beta * fields[c] + bias_coupling * removed_count;
            max_exponent = std::max(max_exponent, weights[c]);
        }
        double total = 0.0;
        for (int c = 0; c < kappa; ++c) {
            weights[c] = std::exp(weights[c] - max_exponent);
            total += weights[c];
        }

        const double u = state.rng_.uniform() * total;
        double cumulative = 0.0;
        int new_color = kappa - 1;
        for (int c = 0; c < kappa; ++c) {
            cumulative += weights[c];
            if (u <= cumulative) {
                new_color = c;
                break;
            }
        }

        if (new_color != old_color) {
            state.energy_ += fields[new_color] - fields[old_color];
            state.bias_ +=
                recolor_bias_delta(state.sigma_, old_color, new_color);
            state.sigma_.recolor(site, new_color);
        }
    }

    if (++state.sweeps_since_refresh_ >= ChainState::kRefreshInterval)
        state.refresh(params, disorder);
}

void gibbs_sweep(ChainState& state, const ModelParams& params,
                 const DisorderSample& disorder) {
    SweepWorkspace workspace(disorder, params.kappa);
    gibbs_sweep(state, params, disorder, workspace);
}

void swap_chains(ChainState& a, ChainState& b) noexcept {
    std::swap(a.sigma_, b.sigma_);
    std::swap(a.energy_, b.energy_);
    std::swap(a.bias_, b.bias_);
    std::swap(a.sweeps_since_refresh_, b.sweeps_since_refresh_);
}

void LadderConfig::validate() const {
    if (betas.empty())
        throw InvalidValueError("betas", "ladder must have at least one rung");
    if (betas.front() != 0.0)
        throw InvalidValueError("betas", "ladder must start at beta = 0");
    for (std::size_t i = 1; i < betas.size(); ++i) {
        if (!(betas[i] > betas[i - 1]))
            throw InvalidValueError("betas", "must be strictly increasing");
    }
    if (sweeps_per_exchange < 1)
        throw InvalidValueError("sweeps_per_exchange", "must be >= 1");
    if (total_sweeps < 1)
        throw InvalidValueError("total_sweeps", "must be >= 1");
    if (burn_in < 0 || burn_in >= total_sweeps)
        throw InvalidValueError("burn_in", "must lie in [0, total_sweeps)");
}

LadderConfig LadderConfig::hybrid(double beta_target, int rungs,
                                  int sweeps_per_exchange, int total_sweeps,
                                  int burn_in) {
    if (!(beta_target >= 0.0))
        throw InvalidValueError("beta", "must be >= 0");
    if (rungs < 1) throw InvalidValueError("rungs", "must be >= 1");
    LadderConfig ladder;
    ladder.sweeps_per_exchange = sweeps_per_exchange;
    ladder.total_sweeps = total_sweeps;
    ladder.burn_in = burn_in;
    if (beta_target == 0.0 || rungs == 1) {
        ladder.betas = {0.0};
        ladder.validate();
        return ladder;
    }
    ladder.betas.resize(rungs);
    constexpr double kSharpness = 3.0;
    const double norm = std::expm1(kSharpness);
    for (int i = 0; i < rungs; ++i) {
        const double t = static_cast<double>(i) / (rungs - 1);
        const double geometric = std::expm1(kSharpness * t) / norm;
        ladder.betas[i] = beta_target * 0.5 * (t + geometric);
    }
    ladder.betas.front() = 0.0;
    ladder.betas.back() = beta_target;
    ladder.validate();
    return ladder;
}

ThermoResult thermo_integrate(const ModelParams& params,
                              const DisorderSample& disorder,
                              const LadderConfig& ladder, std::uint64_t seed,
                              unsigned threads) {
    params.validate();
    ladder.validate();
    if (disorder.size() != params.N)
        throw DimensionError("disorder", params.N, disorder.size());

    const int rungs = static_cast<int>(ladder.betas.size());
    std::vector<ChainState> chains;
    chains.reserve(rungs);
    std::vector<SweepWorkspace> workspaces;
    workspaces.reserve(rungs);
    for (int r = 0; r < rungs; ++r) {
        chains.emplace_back(params, disorder, ladder.betas[r],
                            derive_stream(seed, {static_cast<std::uint64_t>(r)}));
        chains.back().randomize(params, disorder);
        workspaces.emplace_back(disorder, params.kappa);
    }
    GaussianRng exchange_rng(derive_stream(seed, {kExchangeStreamSalt}));

    std::vector<double> energy_sums(rungs, 0.0);
    std::vector<std::uint64_t> accepted(rungs, 0), attempted(rungs, 0);
    std::int64_t measured = 0;

    for (int sweep = 1; sweep <= ladder.total_sweeps; ++sweep) {
        parallel_for_index(rungs, threads, [&](std::size_t r) {
            gibbs_sweep(chains[r], params, disorder, workspaces[r]);
        });

        if (sweep % ladder.sweeps_per_exchange == 0 && rungs > 1) {
            // Alternate even and odd adjacent pairs between phases.
            const int offset =
                (sweep / ladder.sweeps_per_exchange) % 2 == 0 ? 0 : 1;
            for (int r = offset; r + 1 < rungs; r += 2) {
                const double log_accept =
                    (chains[r].beta() - chains[r + 1].beta()) *
                    (chains[r + 1].gauged_energy(params) -
                     chains[r].gauged_energy(params));
                ++attempted[r];
                if (log_accept >= 0.0 ||
                    exchange_rng.uniform() < std::exp(log_accept)) {
                    swap_chains(chains[r], chains[r + 1]);
                    ++accepted[r];
                }
            }
        }

        if (sweep > ladder.burn_in) {
            ++measured;
            for (int r = 0; r < rungs; ++r)
                energy_sums[r] += chains[r].gauged_energy(params);
        }
    }

    ThermoResult result;
    result.trace.resize(rungs);
    for (int r = 0; r < rungs; ++r) {
        result.trace[r].beta = ladder.betas[r];
        result.trace[r].mean_gauged_energy =
            energy_sums[r] / static_cast<double>(measured);
        result.trace[r].exchange_attempts = attempted[r];
        result.trace[r].exchange_acceptance =
            attempted[r] == 0 ? 0.0
                              : static_cast<double>(accepted[r]) /
                                    static_cast<double>(attempted[r]);
    }

    double integral = 0.0;
    for (int r = 0; r + 1 < rungs; ++r) {
        integral += (ladder.betas[r + 1] - ladder.betas[r]) * 0.5 *
                    (result.trace[r].mean_gauged_energy +
                     result.trace[r + 1].mean_gauged_energy);
    }
    result.free_energy = std::log(static_cast<double>(params.kappa)) +
                         integral / params.N;
    return result;
}

namespace {

/// Greedy zero-temperature descent under single-site recolors: move each
/// site to its best color until a full pass makes no strict improvement.
/// Strictly increasing gains rule out cycles.
void greedy_descent(SpinConfiguration& sigma, const ModelParams& params,
                    SweepWorkspace& workspace) {
    const int n = params.N;
    const int kappa = params.kappa;
    const double bias_coupling = 2.0 * params.gamma / n;
    auto& fields = workspace.fields;
    bool improved = true;
    while (improved) {
        improved = false;
        for (int site = 0; site < n; ++site) {
            detail::local_fields_sym(workspace.sym(), n, sigma, site, fields);
            const int old_color = sigma.color(site);
            int best_color = old_color;
            double best_gain = 0.0;
            for (int c = 0; c < kappa; ++c) {
                if (c == old_color) continue;
                const double gain =
                    fields[c] - fields[old_color] +
                    bias_coupling *
                        (sigma.count(c) - sigma.count(old_color) + 1);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_color = c;
                }
            }
            if (best_color != old_color) {
                sigma.recolor(site, best_color);
                improved = true;
            }
        }
    }
}

}  // namespace

std::pair<SpinConfiguration, double> anneal_ground_state(
    const ModelParams& params, const DisorderSample& disorder,
    const LadderConfig& schedule, int restarts, std::uint64_t seed) {
    params.validate();
    schedule.validate();
    if (restarts < 1) throw InvalidValueError("restarts", "must be >= 1");
    if (disorder.size() != params.N)
        throw DimensionError("disorder", params.N, disorder.size());

    SweepWorkspace workspace(disorder, params.kappa);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_colors;

    for (int restart = 0; restart < restarts; ++restart) {
        ChainState chain(params, disorder, 0.0,
                         derive_stream(seed, {static_cast<std::uint64_t>(restart)}));
        chain.randomize(params, disorder);
        for (double beta : schedule.betas) {
            chain.set_beta(beta);
            for (int s = 0; s < schedule.sweeps_per_exchange; ++s)
                gibbs_sweep(chain, params, disorder, workspace);
        }
        SpinConfiguration sigma = chain.sigma();
        greedy_descent(sigma, params, workspace);
        const double value = full_gauged_energy(params, disorder, sigma);
        if (value > best) {
            best = value;
            best_colors = sigma.colors();
        }
    }
    return {SpinConfiguration(std::move(best_colors), params.kappa), best};
}

namespace {

/// Integer counts closest to N*d: floor, then hand out the remainder by
/// largest fractional part.
std::vector<int> rounded_counts(int n, const ColorProfile& profile) {
    const int kappa = static_cast<int>(profile.d.size());
    std::vector<int> counts(kappa);
    std::vector<std::pair<double, int>> fractional(kappa);
    int assigned = 0;
    for (int k = 0; k < kappa; ++k) {
        const double target = n * profile.d[k];
        counts[k] = static_cast<int>(std::floor(target));
        assigned += counts[k];
        fractional[k] = {target - counts[k], k};
    }
    std::sort(fractional.begin(), fractional.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int r = 0; r < n - assigned; ++r) ++counts[fractional[r].second];
    return counts;
}

bool recolor_stays_in_sector(const SpinConfiguration& sigma,
                             const ColorProfile& profile, int old_color,
                             int new_color) {
    const double n = static_cast<double>(sigma.size());
    const double removed =
        static_cast<double>(sigma.count(old_color) - 1) / n;
    const double added = static_cast<double>(sigma.count(new_color) + 1) / n;
    return std::abs(removed - profile.d[old_color]) <= profile.epsilon &&
           std::abs(added - profile.d[new_color]) <= profile.epsilon;
}

}  // namespace

double estimate_sector_max(const ModelParams& params,
                           const DisorderSample& disorder,
                           const ColorProfile& profile,
                           const LadderConfig& schedule, int restarts,
                           std::uint64_t seed) {
    params.validate();
    profile.validate();
    schedule.validate();
    if (restarts < 1) throw InvalidValueError("restarts", "must be >= 1");
    if (static_cast<int>(profile.d.size()) != params.kappa)
        throw DimensionError("profile.d", params.kappa, profile.d.size());
    if (disorder.size() != params.N)
        throw DimensionError("disorder", params.N, disorder.size());

    const int n = params.N;
    const int kappa = params.kappa;
    const std::vector<int> counts = rounded_counts(n, profile);
    std::vector<int> base_colors;
    base_colors.reserve(n);
    for (int k = 0; k < kappa; ++k)
        base_colors.insert(base_colors.end(), counts[k], k);
    {
        SpinConfiguration probe(base_colors, kappa);
        if (!in_sector(probe, profile))
            throw Error(
                "cannot construct an initial in-sector configuration by "
                "rounding N*d");
    }

    SweepWorkspace workspace(disorder, kappa);
    double best = -std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < restarts; ++restart) {
        GaussianRng rng(
            derive_stream(seed, {static_cast<std::uint64_t>(restart)}));
        std::vector<int> colors = base_colors;
        for (int i = n - 1; i > 0; --i) {  // Fisher-Yates
            const int j = static_cast<int>(rng.below(i + 1));
            std::swap(colors[i], colors[j]);
        }
        SpinConfiguration sigma(colors, kappa);
        const double bias_scale = params.gamma / n;

        auto try_swap = [&](int i, int j, double beta) {
            const int ci = sigma.color(i);
            const int cj = sigma.color(j);
            if (ci == cj) return;
            const double d1 = recolor_delta(disorder, sigma, i, cj);
            sigma.recolor(i, cj);
            const double d2 = recolor_delta(disorder, sigma, j, ci);
            const double delta = d1 + d2;  // counts preserved: bias fixed
            const bool accept =
                beta * delta >= 0.0 ||
                rng.uniform() < std::exp(beta * delta);
            if (accept)
                sigma.recolor(j, ci);
            else
                sigma.recolor(i, ci);
        };

        auto try_recolor = [&](int site, int new_color, double beta) {
            const int old_color = sigma.color(site);
            if (new_color == old_color) return;
            if (!recolor_stays_in_sector(sigma, profile, old_color, new_color))
                return;
            const double delta =
                recolor_delta(disorder, sigma, site, new_color) +
                bias_scale * static_cast<double>(recolor_bias_delta(
                                 sigma, old_color, new_color));
            const bool accept = beta * delta >= 0.0 ||
                                rng.uniform() < std::exp(beta * delta);
            if (accept) sigma.recolor(site, new_color);
        };

        for (double beta : schedule.betas) {
            for (int s = 0; s < schedule.sweeps_per_exchange; ++s) {
                for (int move = 0; move < n; ++move) {
                    if (rng.uniform() < 0.5) {
                        const int i = static_cast<int>(rng.below(n));
                        const int j = static_cast<int>(rng.below(n));
                        try_swap(i, j, beta);
                    } else {
                        const int site = static_cast<int>(rng.below(n));
                        const int color = static_cast<int>(rng.below(kappa));
                        try_recolor(site, color, beta);
                    }
                }
            }
        }

        // Sector-preserving descent: first-improvement passes over all
        // swaps and in-sector recolors until neither finds a gain.
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const int ci = sigma.color(i);
                    const int cj = sigma.color(j);
                    if (ci == cj) continue;
                    const double d1 = recolor_delta(disorder, sigma, i, cj);
                    sigma.recolor(i, cj);
                    const double d2 = recolor_delta(disorder, sigma, j, ci);
                    if (d1 + d2 > 0.0) {
                        sigma.recolor(j, ci);
                        improved = true;
                    } else {
                        sigma.recolor(i, ci);
                    }
                }
            }
            for (int site = 0; site < n; ++site) {
                for (int c = 0; c < kappa; ++c) {
                    const int old_color = sigma.color(site);
                    if (c == old_color) continue;
                    if (!recolor_stays_in_sector(sigma, profile, old_color, c))
                        continue;
                    const double delta =
                        recolor_delta(disorder, sigma, site, c) +
                        bias_scale * static_cast<double>(recolor_bias_delta(
                                         sigma, old_color, c));
                    if (delta > 0.0) {
                        sigma.recolor(site, c);
                        improved = true;
                    }
                }
            }
        }

        best = std::max(best, full_gauged_energy(params, disorder, sigma));
    }
    return best;
}

}  // namespace potts
