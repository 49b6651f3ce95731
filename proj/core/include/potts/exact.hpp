#ifndef POTTS_EXACT_HPP
#define POTTS_EXACT_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "potts/model.hpp"

namespace potts {

/// Largest number of configurations an exhaustive enumeration may visit.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 1ull << 27;

/// Disorder Monte Carlo estimate of a quenched free energy.
struct QuenchedEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int num_disorder_samples = 0;
    ModelParams params;
};

/// Bounds from the ground-state sandwich: for every disorder and sector,
///   lower <= log_partition <= lower + log kappa,
/// where lower = (beta/N) * max over the sector of the gauged energy
/// H + (gamma/N) * bias. All three values come from a single enumeration
/// pass, so the lower inequality is exact in floating point.
struct SlopeBounds {
    double lower = 0.0;
    double upper = 0.0;
    double log_partition = 0.0;
};

/// (1/N) log sum_sigma exp(beta*H(sigma) + (beta*gamma/N)*bias(sigma)),
/// over all kappa^N configurations, or over the sector when a profile is
/// given. Streaming log-sum-exp with running-max rescaling; no overflow
/// for beta up to 1e3.
///
/// Throws BudgetError when kappa^N exceeds `budget` and EmptySectorError
/// when a requested sector contains no configuration.
double log_partition(const ModelParams& params, const DisorderSample& disorder,
                     const std::optional<ColorProfile>& profile = std::nullopt,
                     std::uint64_t budget = kDefaultEnumerationBudget);

/// Averages log_partition over num_samples disorder draws. Sample i uses
/// the stream derived from (seed, i), so estimates are reproducible and
/// independent of evaluation order; parallel and serial runs agree
/// bit-for-bit. std_error is the unbiased sample deviation / sqrt(n).
QuenchedEstimate quenched_free_energy(
    const ModelParams& params, int num_samples, std::uint64_t seed,
    const std::optional<ColorProfile>& profile = std::nullopt,
    std::uint64_t budget = kDefaultEnumerationBudget, unsigned threads = 1);

/// Exhaustive maximizer of the gauged energy H + (gamma/N)*bias over all
/// configurations or over a sector. Ties resolve to the lexicographically
/// smallest color sequence; near-ties are re-evaluated with a full energy
/// recomputation so that symmetric duplicates compare exactly.
std::pair<SpinConfiguration, double> exact_ground_state(
    const ModelParams& params, const DisorderSample& disorder,
    const std::optional<ColorProfile>& profile = std::nullopt,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// The per-disorder sandwich around the restricted log-partition; see
/// SlopeBounds. Also checks the inequalities it returns and throws Error
/// if enumeration and bound disagree beyond float rounding.
SlopeBounds beta_slope_check(const ModelParams& params,
                             const DisorderSample& disorder,
                             const ColorProfile& profile,
                             std::uint64_t budget = kDefaultEnumerationBudget);

/// (1/N) log sum over s in {-1,+1}^N of exp(beta_sk * sk_energy(s)).
/// Deliberately a separate code path from log_partition (fresh O(N^2)
/// energy per state): the kappa = 2 reduction test pits the two routes
/// against each other.
double sk_log_partition(const DisorderSample& disorder, double beta_sk,
                        std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace potts

#endif
