#ifndef POTTS_MC_HPP
#define POTTS_MC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "potts/model.hpp"
#include "potts/rng.hpp"

namespace potts {

/// Shared read-only scratch for sweep kernels: the symmetrized coupling
/// matrix g + g^T for one disorder plus per-color work arrays. Build one
/// per disorder and reuse it across chains and sweeps.
class SweepWorkspace {
public:
    SweepWorkspace(const DisorderSample& disorder, int kappa);

    int size() const noexcept { return n_; }
    std::span<const double> sym() const noexcept { return sym_; }

    std::vector<double> fields;
    std::vector<double> weights;

private:
    int n_ = 0;
    std::vector<double> sym_;
};

/// One Markov chain: a configuration, its inverse temperature, cached
/// gauged-energy pieces and a private random stream. The caches follow
/// every recolor incrementally and are refreshed from a full
/// recomputation every kRefreshInterval sweeps.
class ChainState {
public:
    static constexpr int kRefreshInterval = 256;

    ChainState(const ModelParams& params, const DisorderSample& disorder,
               double beta, std::uint64_t stream_seed);

    /// Random initial coloring drawn from the chain's own stream.
    void randomize(const ModelParams& params, const DisorderSample& disorder);

    double beta() const noexcept { return beta_; }
    void set_beta(double beta) noexcept { beta_ = beta; }
    const SpinConfiguration& sigma() const noexcept { return sigma_; }
    double current_energy() const noexcept { return energy_; }
    std::int64_t current_bias() const noexcept { return bias_; }
    std::uint64_t rng_stream() const noexcept { return stream_seed_; }

    /// H + (gamma/N) * bias, the exponent per unit beta.
    double gauged_energy(const ModelParams& params) const noexcept {
        return energy_ +
               params.gamma / params.N * static_cast<double>(bias_);
    }

    /// Recomputes the caches from scratch.
    void refresh(const ModelParams& params, const DisorderSample& disorder);

    friend void gibbs_sweep(ChainState& state, const ModelParams& params,
                            const DisorderSample& disorder,
                            SweepWorkspace& workspace);
    friend void swap_chains(ChainState& a, ChainState& b) noexcept;

private:
    SpinConfiguration sigma_;
    double beta_ = 0.0;
    double energy_ = 0.0;
    std::int64_t bias_ = 0;
    std::uint64_t stream_seed_ = 0;
    GaussianRng rng_;
    int sweeps_since_refresh_ = 0;
};

/// Inverse-temperature ladder plus sweep counts for tempering and
/// annealing runs. betas must be strictly increasing and start at 0, so
/// the cold end of every integration anchors at the known value log kappa.
struct LadderConfig {
    std::vector<double> betas;
    int sweeps_per_exchange = 5;
    int total_sweeps = 4000;
    int burn_in = 1000;

    void validate() const;

    /// Hybrid linear/exponential rung grid from 0 to beta_target, denser
    /// near 0 where the integrand varies fastest.
    static LadderConfig hybrid(double beta_target, int rungs = 32,
                               int sweeps_per_exchange = 5,
                               int total_sweeps = 4000, int burn_in = 1000);
};

/// Per-rung tempering diagnostics.
struct RungTrace {
    double beta = 0.0;
    double mean_gauged_energy = 0.0;
    double exchange_acceptance = 0.0;
    std::uint64_t exchange_attempts = 0;
};

struct ThermoResult {
    double free_energy = 0.0;
    std::vector<RungTrace> trace;
};

/// One heat-bath sweep: every site in order draws a fresh color from its
/// full conditional exp(beta*field[c] + 2*beta*gamma*n'_c/N). At beta = 0
/// this is exactly uniform over colors.
void gibbs_sweep(ChainState& state, const ModelParams& params,
                 const DisorderSample& disorder, SweepWorkspace& workspace);

/// Convenience overload building a throwaway workspace.
void gibbs_sweep(ChainState& state, const ModelParams& params,
                 const DisorderSample& disorder);

/// Exchanges configurations (and caches) between two chains, leaving
/// betas and random streams attached to their rungs.
void swap_chains(ChainState& a, ChainState& b) noexcept;

/// Per-disorder estimate of (1/N) log Z(beta) by thermodynamic
/// integration over the ladder: log kappa + (1/N) integral of the Gibbs
/// mean of the gauged energy, trapezoid rule over the rungs, with
/// parallel-tempering exchanges between adjacent rungs. Deterministic
/// given the seed for any thread count.
ThermoResult thermo_integrate(const ModelParams& params,
                              const DisorderSample& disorder,
                              const LadderConfig& ladder, std::uint64_t seed,
                              unsigned threads = 1);

/// Simulated annealing over the ladder's betas followed by a greedy
/// zero-temperature descent, best result over `restarts` independent
/// runs. Restart r uses the stream (seed, r), so increasing restarts
/// never degrades the reported value. The returned configuration is a
/// strict local maximum of the gauged energy under single-site recolors;
/// the returned value is a full recomputation, not the running cache.
std::pair<SpinConfiguration, double> anneal_ground_state(
    const ModelParams& params, const DisorderSample& disorder,
    const LadderConfig& schedule, int restarts, std::uint64_t seed);

/// Annealed lower bound on the maximum gauged energy over a sector.
/// Proposals mix count-preserving two-site swaps with single-site
/// recolors that are rejected unless the configuration stays in the
/// sector; the final descent uses the same sector-preserving moves.
/// The initial configuration rounds N*d to integer counts; throws Error
/// when that rounding does not land inside the sector.
double estimate_sector_max(const ModelParams& params,
                           const DisorderSample& disorder,
                           const ColorProfile& profile,
                           const LadderConfig& schedule, int restarts,
                           std::uint64_t seed);

}  // namespace potts

#endif
