#include "potts/bounds.hpp"

#include <cmath>

#include "potts/errors.hpp"
#include "potts/parallel.hpp"
#include "potts/rng.hpp"

namespace potts::bounds {

double lower_bound(int n, double beta) {
    if (n < 1) throw InvalidValueError("N", "must be >= 1");
    if (!(beta >= 0.0)) throw InvalidValueError("beta", "must be >= 0");
    const double ratio = static_cast<double>(n - 1) / n;
    return std::pow(ratio, 1.5) * kRsLowerSlope * beta;
}

double lower_bound_limit(double beta) {
    if (!(beta >= 0.0)) throw InvalidValueError("beta", "must be >= 0");
    return kRsLowerSlope * beta;
}

double rs_upper_bound(int kappa, double beta) {
    if (kappa < 2) throw InvalidValueError("kappa", "must be >= 2");
    if (!(beta >= 0.0)) throw InvalidValueError("beta", "must be >= 0");
    return std::log(static_cast<double>(kappa)) + beta * beta / (2.0 * kappa);
}

std::pair<double, double> rs_gaussian_value(int kappa, double beta,
                                            std::int64_t num_samples,
                                            std::uint64_t seed) {
    if (kappa < 2) throw InvalidValueError("kappa", "must be >= 2");
    if (!(beta >= 0.0)) throw InvalidValueError("beta", "must be >= 0");
    if (num_samples < 1)
        throw InvalidValueError("num_samples", "must be >= 1");

    const double a = beta * std::sqrt(2.0 / kappa);
    const double tilt = std::max(a - 2.0, 0.0);
    const double residual = a - tilt;  // exponent gap the sampler sees
    const double log_weight_const = 0.5 * tilt * tilt;

    GaussianRng rng(derive_stream(seed, {}));
    double sum = 0.0;
    double sum_squares = 0.0;
    for (std::int64_t s = 0; s < num_samples; ++s) {
        double x = 0.0;
        for (int k = 0; k < kappa; ++k) {
            const double z = tilt + rng.normal();
            x += std::exp(residual * z + log_weight_const);
        }
        sum += x;
        sum_squares += x * x;
    }

    const double n = static_cast<double>(num_samples);
    const double mean = sum / n;
    double std_error_of_mean = 0.0;
    if (num_samples > 1) {
        const double variance =
            std::max(0.0, (sum_squares - n * mean * mean) / (n - 1.0));
        std_error_of_mean = std::sqrt(variance / n);
    }

    const double estimate =
        std::log(mean) - beta * beta / (2.0 * kappa);
    // Delta method for log(mean).
    const double std_error = std_error_of_mean / mean;
    return {estimate, std_error};
}

void RegionQuery::validate() const {
    if (kappa < 2) throw InvalidValueError("kappa", "must be >= 2");
    if (!(beta >= 0.0)) throw InvalidValueError("beta", "must be >= 0");
    if (!(constant_c > 0.0 && constant_c <= 1.0))
        throw InvalidValueError("constant_c", "must lie in (0, 1]");
}

bool symmetry_breaking_criterion(const RegionQuery& query) {
    query.validate();
    return query.constant_c * query.beta >
           std::log(static_cast<double>(query.kappa)) +
               query.beta * query.beta / (2.0 * query.kappa);
}

std::optional<std::pair<double, double>> beta_interval(int kappa,
                                                       double constant_c) {
    if (kappa < 2) throw InvalidValueError("kappa", "must be >= 2");
    if (!(constant_c > 0.0))
        throw InvalidValueError("constant_c", "must be > 0");
    const double k = static_cast<double>(kappa);
    const double center = k * constant_c;
    const double discriminant = center * center - 2.0 * k * std::log(k);
    if (!(discriminant > 0.0)) return std::nullopt;
    const double radius = std::sqrt(discriminant);
    return std::make_pair(center - radius, center + radius);
}

int min_kappa_threshold(double constant_c) {
    if (!(constant_c > 0.0 && constant_c <= 1.0))
        throw InvalidValueError("constant_c", "must lie in (0, 1]");
    const double cap =
        10.0 * std::ceil(std::exp(2.0 / (constant_c * constant_c)));
    for (int kappa = 2; static_cast<double>(kappa) <= cap; ++kappa) {
        if (beta_interval(kappa, constant_c)) return kappa;
    }
    throw Error("min_kappa_threshold: no hit up to scan cap " +
                std::to_string(cap));
}

std::vector<PathViolation> validate_path(const MatrixPath& path) {
    std::vector<PathViolation> violations;
    const auto global = [&](const std::string& condition) {
        violations.push_back({-1, condition});
    };
    const auto at_step = [&](int step, const std::string& condition) {
        violations.push_back({step, condition});
    };

    if (path.times.empty() || path.values.empty()) {
        global("path must have at least one step");
        return violations;
    }
    if (path.times.size() != path.values.size()) {
        global("times and values must have equal length");
        return violations;
    }
    if (path.times.front() != 0.0) global("times must start at 0");
    if (path.times.back() != 1.0) global("times must end at 1");
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        if (!(path.times[i] > path.times[i - 1]))
            at_step(static_cast<int>(i), "times not strictly increasing");
    }

    const Eigen::Index kappa = path.values.front().rows();
    if (static_cast<Eigen::Index>(path.target_d.size()) != kappa) {
        global("target_d length does not match matrix dimension");
        return violations;
    }
    double d_sum = 0.0;
    for (double dk : path.target_d) d_sum += dk;
    if (std::abs(d_sum - 1.0) > 1e-12)
        global("target check: target_d does not sum to 1");

    constexpr double kSymmetryTol = 1e-12;
    constexpr double kPsdTol = 1e-10;

    for (std::size_t i = 0; i < path.values.size(); ++i) {
        const auto& value = path.values[i];
        if (value.rows() != kappa || value.cols() != kappa) {
            at_step(static_cast<int>(i), "matrix is not kappa-by-kappa");
            return violations;
        }
        if ((value - value.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
            at_step(static_cast<int>(i), "matrix not symmetric");
    }

    if (path.values.front().cwiseAbs().maxCoeff() > kSymmetryTol)
        at_step(0, "path must start at the zero matrix");

    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(kappa, kappa);
    for (Eigen::Index k = 0; k < kappa; ++k)
        target(k, k) = path.target_d[static_cast<std::size_t>(k)];
    if ((path.values.back() - target).cwiseAbs().maxCoeff() > kSymmetryTol)
        at_step(static_cast<int>(path.values.size()) - 1,
                "target check: endpoint differs from diag(target_d)");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    for (std::size_t i = 1; i < path.values.size(); ++i) {
        Eigen::MatrixXd increment = path.values[i] - path.values[i - 1];
        increment = 0.5 * (increment + increment.transpose().eval());
        solver.compute(increment, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -kPsdTol)
            at_step(static_cast<int>(i), "increment not PSD");
    }
    return violations;
}

MatrixPath one_step_path(std::vector<double> d) {
    const Eigen::Index kappa = static_cast<Eigen::Index>(d.size());
    MatrixPath path;
    path.times = {0.0, 1.0};
    path.values.push_back(Eigen::MatrixXd::Zero(kappa, kappa));
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(kappa, kappa);
    for (Eigen::Index k = 0; k < kappa; ++k)
        target(k, k) = d[static_cast<std::size_t>(k)];
    path.values.push_back(std::move(target));
    path.target_d = std::move(d);
    return path;
}

MatrixPath random_psd_path(std::vector<double> d, int steps,
                           std::uint64_t seed) {
    if (steps < 1) throw InvalidValueError("steps", "must be >= 1");
    const Eigen::Index kappa = static_cast<Eigen::Index>(d.size());
    GaussianRng rng(derive_stream(seed, {}));

    // Cumulative sums of random Gram-matrix increments...
    std::vector<Eigen::MatrixXd> cumulative;
    cumulative.push_back(Eigen::MatrixXd::Zero(kappa, kappa));
    for (int i = 0; i < steps; ++i) {
        Eigen::MatrixXd factor(kappa, kappa);
        for (Eigen::Index r = 0; r < kappa; ++r)
            for (Eigen::Index c = 0; c < kappa; ++c)
                factor(r, c) = rng.normal();
        cumulative.push_back(cumulative.back() + factor * factor.transpose());
    }

    // ...conjugated by M = diag(d)^{1/2} C_final^{-1/2} so the endpoint is
    // exactly diag(sqrt d) * I * diag(sqrt d) = diag(d) and every
    // increment stays PSD.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cumulative.back());
    const Eigen::MatrixXd inv_sqrt =
        solver.operatorInverseSqrt();
    Eigen::VectorXd sqrt_d(kappa);
    for (Eigen::Index k = 0; k < kappa; ++k)
        sqrt_d(k) = std::sqrt(d[static_cast<std::size_t>(k)]);
    const Eigen::MatrixXd transform = sqrt_d.asDiagonal() * inv_sqrt;

    MatrixPath path;
    path.times.resize(steps + 1);
    for (int i = 0; i <= steps; ++i)
        path.times[i] = static_cast<double>(i) / steps;
    path.values.reserve(steps + 1);
    for (const auto& c : cumulative) {
        Eigen::MatrixXd value = transform * c * transform.transpose();
        value = 0.5 * (value + value.transpose().eval());
        path.values.push_back(std::move(value));
    }
    // Pin the endpoints exactly; conjugation leaves ~1-ulp residue.
    path.values.front().setZero();
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(kappa, kappa);
    for (Eigen::Index k = 0; k < kappa; ++k)
        target(k, k) = d[static_cast<std::size_t>(k)];
    path.values.back() = std::move(target);
    path.target_d = std::move(d);
    return path;
}

RegionScan region_scan(int kappa_lo, int kappa_hi, std::vector<double> betas,
                       double constant_c, unsigned threads) {
    if (kappa_lo < 2) throw InvalidValueError("kappa", "range must start >= 2");
    if (kappa_hi < kappa_lo)
        throw InvalidValueError("kappa", "range must be non-empty");
    RegionScan scan;
    scan.kappa_lo = kappa_lo;
    scan.kappa_hi = kappa_hi;
    scan.betas = std::move(betas);
    const std::size_t rows = static_cast<std::size_t>(kappa_hi - kappa_lo + 1);
    const std::size_t cols = scan.betas.size();
    scan.breaking.assign(rows * cols, 0);
    parallel_for_index(rows, threads, [&](std::size_t row) {
        const int kappa = kappa_lo + static_cast<int>(row);
        for (std::size_t col = 0; col < cols; ++col) {
            RegionQuery query{kappa, scan.betas[col], constant_c};
            scan.breaking[row * cols + col] =
                symmetry_breaking_criterion(query) ? 1 : 0;
        }
    });
    return scan;
}

}  // namespace potts::bounds
