#ifndef POTTS_MODEL_HPP
#define POTTS_MODEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "potts/errors.hpp"

namespace potts {

/// System size, number of colors, inverse temperature and coupling bias.
/// gamma = 0 is the unbiased model; the bias enters the Gibbs weight as
/// exp(beta*H + (beta*gamma/N) * sum_{ij} 1{sigma_i = sigma_j}).
struct ModelParams {
    int N = 1;
    int kappa = 2;
    double beta = 0.0;
    double gamma = 0.0;

    /// Throws InvalidValueError naming the offending field.
    void validate() const;
};

/// One realization of the quenched randomness: an N-by-N matrix of i.i.d.
/// standard Gaussians, with no symmetry imposed, plus the seed it was
/// generated from. Regenerating from the same seed is bit-identical.
class DisorderSample {
public:
    DisorderSample() = default;

    /// Takes ownership of an explicit coupling matrix (row-major, N*N).
    DisorderSample(int n, std::vector<double> couplings, std::uint64_t seed);

    /// Draws the N*N i.i.d. standard Gaussian couplings from `seed`.
    static DisorderSample generate(int n, std::uint64_t seed);

    int size() const noexcept { return n_; }
    std::uint64_t seed() const noexcept { return seed_; }

    double operator()(int i, int j) const noexcept {
        return g_[static_cast<std::size_t>(i) * n_ + j];
    }

    /// Row-major flat view of the couplings.
    std::span<const double> flat() const noexcept { return g_; }

    /// sum_{i,j} g_ij, computed once on demand (used by the kappa = 2
    /// correspondence with the Sherrington-Kirkpatrick model).
    double total_sum() const;

private:
    int n_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> g_;
    mutable double total_sum_ = 0.0;
    mutable bool total_sum_valid_ = false;
};

/// A coloring of the N sites with cached occupation numbers. Colors are
/// 0-based internally; CLI and file formats translate to the 1-based
/// convention at the boundary.
class SpinConfiguration {
public:
    SpinConfiguration() = default;

    /// Validates entries against kappa and computes the counts.
    SpinConfiguration(std::vector<int> colors, int kappa);

    /// All sites set to color 0.
    static SpinConfiguration uniform(int n, int kappa);

    int size() const noexcept { return static_cast<int>(colors_.size()); }
    int kappa() const noexcept { return static_cast<int>(counts_.size()); }
    int color(int site) const noexcept { return colors_[site]; }
    const std::vector<int>& colors() const noexcept { return colors_; }
    const std::vector<int>& counts() const noexcept { return counts_; }
    int count(int color) const noexcept { return counts_[color]; }

    /// Single-site recolor, keeping the counts cache consistent.
    void recolor(int site, int new_color) noexcept {
        const int old_color = colors_[site];
        --counts_[old_color];
        ++counts_[new_color];
        colors_[site] = new_color;
    }

private:
    std::vector<int> colors_;
    std::vector<int> counts_;
};

/// Target color proportions d (a simplex point) and a half-width epsilon.
/// The sector consists of configurations with |n_k/N - d_k| <= epsilon
/// for every color k.
struct ColorProfile {
    std::vector<double> d;
    double epsilon = 0.0;

    /// Throws InvalidValueError unless d sums to 1 within 1e-12,
    /// all entries lie in [0,1], and epsilon > 0.
    void validate() const;
};

// ---------------------------------------------------------------------
// Energy evaluation
// ---------------------------------------------------------------------

/// H_N(sigma) = N^{-1/2} sum_{i,j} g_ij 1{sigma_i = sigma_j}.
/// The diagonal i = j contributes sum_i g_ii for every configuration.
double energy(const ModelParams& params, const DisorderSample& disorder,
              const SpinConfiguration& sigma);

/// sum_{i,j} 1{sigma_i = sigma_j} = sum_k n_k^2. The bias term of the
/// generalized free energy is (beta*gamma/N) times this value.
std::int64_t bias_term(const SpinConfiguration& sigma);

/// Whether every color proportion is within epsilon of its target,
/// boundary inclusive. Comparison is exact floating <= with no slack.
bool in_sector(const SpinConfiguration& sigma, const ColorProfile& profile);

/// N^{-1/2} sum_{i,j} g_ij s_i s_j for s in {-1,+1}^N. For kappa = 2 and
/// the map color 0 -> +1, color 1 -> -1,
///   energy(sigma) = sk_energy(s)/2 + N^{-1/2} sum_{ij} g_ij / 2
/// exactly, from 1{sigma_i = sigma_j} = (s_i s_j + 1)/2.
double sk_energy(const DisorderSample& disorder, std::span<const int> spins);

/// The +/-1 sequence corresponding to a two-color configuration.
std::vector<int> to_sk_spins(const SpinConfiguration& sigma);

// ---------------------------------------------------------------------
// Incremental kernels
// ---------------------------------------------------------------------

/// Change in H_N when site `site` is recolored a -> b:
///   N^{-1/2} sum_{j != site} (g_{site,j} + g_{j,site})
///            (1{sigma_j = b} - 1{sigma_j = a}).
/// The self-term g_ii cancels. O(N) against the O(N^2) full evaluation.
double recolor_delta(const DisorderSample& disorder,
                     const SpinConfiguration& sigma, int site, int new_color);

/// Per-color local fields for one site: field[c] = N^{-1/2} *
/// sum_{j != site} (g_{site,j} + g_{j,site}) 1{sigma_j = c}. The energy
/// change of a recolor a -> b at this site is field[b] - field[a]; heat
/// bath samples directly from exp(beta * field[c] + bias part).
/// `out` must have size kappa and is overwritten.
void local_fields(const DisorderSample& disorder,
                  const SpinConfiguration& sigma, int site,
                  std::span<double> out);

namespace detail {

/// Row-major g + g^T, precomputed once per disorder for the MC hot path.
/// Term-by-term identical to what local_fields computes on the fly.
std::vector<double> symmetrized_couplings(const DisorderSample& disorder);

void local_fields_sym(std::span<const double> sym, int n,
                      const SpinConfiguration& sigma, int site,
                      std::span<double> out);

}  // namespace detail

}  // namespace potts

#endif
