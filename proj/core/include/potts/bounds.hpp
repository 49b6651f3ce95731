#ifndef POTTS_BOUNDS_HPP
#define POTTS_BOUNDS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace potts::bounds {

/// Slope of the linear-in-beta lower bound on the free energy in the
/// infinite-size limit: 2 / (3 sqrt(pi)) ~= 0.376126.
inline constexpr double kRsLowerSlope = (2.0 / 3.0) * std::numbers::inv_sqrtpi;

/// Half the maximum of the Sherrington-Kirkpatrick energy per spin,
/// sqrt(2) * 0.7632 / 2: the sharper slope constant quoted for the
/// kappa >= 21 threshold.
inline constexpr double kSkGroundStateSlope = 0.7632 * std::numbers::sqrt2 / 2.0;

/// ((N-1)/N)^{3/2} * slope * beta, the finite-size free-energy lower bound.
double lower_bound(int n, double beta);

/// N -> infinity version: slope * beta.
double lower_bound_limit(double beta);

/// Replica-symmetric upper bound on the limit free energy at the uniform
/// color profile: log kappa + beta^2 / (2 kappa).
double rs_upper_bound(int kappa, double beta);

/// Monte Carlo check of the Gaussian identity behind rs_upper_bound:
/// estimates log E sum_k exp(beta sqrt(2/kappa) z_k) - beta^2/(2 kappa)
/// for independent standard Gaussians z_k. Returns (estimate, std_error).
///
/// For a = beta sqrt(2/kappa) beyond ~2 the plain average is dominated by
/// unseen tail mass and both the estimate and its error bar collapse, so
/// the sampler draws from the exponentially tilted proposal N(a - 2, 1)
/// per coordinate and reweights. The estimator stays unbiased for the
/// closed form with honest, finite variance across the whole (kappa,
/// beta) range; at small a the tilt vanishes and this is the plain
/// average of sum_k exp(a z_k).
std::pair<double, double> rs_gaussian_value(int kappa, double beta,
                                            std::int64_t num_samples,
                                            std::uint64_t seed);

/// A (kappa, beta) point to test for color symmetry breaking, with the
/// linear lower-bound slope to test against.
struct RegionQuery {
    int kappa = 2;
    double beta = 0.0;
    double constant_c = kRsLowerSlope;

    void validate() const;
};

/// True iff the linear lower bound exceeds the replica-symmetric upper
/// bound at this point: c * beta > log kappa + beta^2 / (2 kappa).
/// Strict inequality in doubles, no slack.
bool symmetry_breaking_criterion(const RegionQuery& query);

/// The open beta-interval where c * beta > log kappa + beta^2/(2 kappa):
/// (kappa c - sqrt(disc), kappa c + sqrt(disc)) with
/// disc = kappa^2 c^2 - 2 kappa log kappa, or nullopt when disc <= 0.
std::optional<std::pair<double, double>> beta_interval(int kappa,
                                                       double constant_c);

/// Smallest kappa >= 2 whose beta_interval is non-empty, by upward scan.
/// Throws Error past the scan cap 10 * ceil(exp(2 / c^2)).
int min_kappa_threshold(double constant_c);

// ---------------------------------------------------------------------
// Order-parameter paths
// ---------------------------------------------------------------------

/// Discrete non-decreasing path of PSD matrices from 0 to diag(target_d),
/// left-continuous step convention: the path holds values[i] on
/// (times[i-1], times[i]].
struct MatrixPath {
    std::vector<double> times;
    std::vector<Eigen::MatrixXd> values;
    std::vector<double> target_d;
};

/// One failed path condition; step is the index into times/values, or -1
/// for a global condition.
struct PathViolation {
    int step = -1;
    std::string condition;
};

/// Empty iff the path satisfies all MatrixPath invariants: endpoints at 0
/// and diag(target_d), symmetry within 1e-12, every increment PSD with
/// minimum eigenvalue >= -1e-10, times increasing from 0 to 1.
std::vector<PathViolation> validate_path(const MatrixPath& path);

/// The path constant 0 on [0,1) jumping to diag(d) at 1 — the
/// replica-symmetric instance behind rs_upper_bound.
MatrixPath one_step_path(std::vector<double> d);

/// Random member of the path space: PSD increments from Gaussian factors,
/// conjugated so the endpoint lands exactly on diag(d).
MatrixPath random_psd_path(std::vector<double> d, int steps,
                           std::uint64_t seed);

// ---------------------------------------------------------------------
// Region tabulation
// ---------------------------------------------------------------------

/// symmetry_breaking_criterion tabulated over a kappa range and a beta
/// grid; row-major, rows indexed by kappa - kappa_lo.
struct RegionScan {
    int kappa_lo = 2;
    int kappa_hi = 2;
    std::vector<double> betas;
    std::vector<char> breaking;  // rows * betas.size()

    bool at(int kappa, std::size_t beta_index) const {
        return breaking[static_cast<std::size_t>(kappa - kappa_lo) *
                            betas.size() +
                        beta_index] != 0;
    }
};

RegionScan region_scan(int kappa_lo, int kappa_hi, std::vector<double> betas,
                       double constant_c, unsigned threads = 1);

}  // namespace potts::bounds

#endif
