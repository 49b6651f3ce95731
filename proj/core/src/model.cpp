#include "potts/model.hpp"

#include <cmath>
#include <cstdlib>

#include "potts/rng.hpp"

namespace potts {

void ModelParams::validate() const {
    if (N < 1) throw InvalidValueError("N", "must be >= 1");
    if (kappa < 2) throw InvalidValueError("kappa", "must be >= 2");
    if (!(beta >= 0.0)) throw InvalidValueError("beta", "must be >= 0");
    if (!std::isfinite(gamma)) throw InvalidValueError("gamma", "must be finite");
}

DisorderSample::DisorderSample(int n, std::vector<double> couplings,
                               std::uint64_t seed)
    : n_(n), seed_(seed), g_(std::move(couplings)) {
    if (n < 1) throw InvalidValueError("N", "must be >= 1");
    const std::size_t expected = static_cast<std::size_t>(n) * n;
    if (g_.size() != expected)
        throw DimensionError("g", expected, g_.size());
}

DisorderSample DisorderSample::generate(int n, std::uint64_t seed) {
    if (n < 1) throw InvalidValueError("N", "must be >= 1");
    GaussianRng rng(derive_stream(seed, {}));
    std::vector<double> g(static_cast<std::size_t>(n) * n);
    for (double& entry : g) entry = rng.normal();
    return DisorderSample(n, std::move(g), seed);
}

double DisorderSample::total_sum() const {
    if (!total_sum_valid_) {
        double sum = 0.0;
        for (double entry : g_) sum += entry;
        total_sum_ = sum;
        total_sum_valid_ = true;
    }
    return total_sum_;
}

SpinConfiguration::SpinConfiguration(std::vector<int> colors, int kappa)
    : colors_(std::move(colors)), counts_(kappa, 0) {
    if (kappa < 2) throw InvalidValueError("kappa", "must be >= 2");
    for (int c : colors_) {
        if (c < 0 || c >= kappa)
            throw InvalidValueError("colors",
                                    "entry " + std::to_string(c) +
                                        " outside [0, " +
                                        std::to_string(kappa - 1) + "]");
        ++counts_[c];
    }
}

SpinConfiguration SpinConfiguration::uniform(int n, int kappa) {
    return SpinConfiguration(std::vector<int>(n, 0), kappa);
}

void ColorProfile::validate() const {
    // epsilon = 0 is the degenerate sector with exact counts; useful for
    // single-configuration tests even though the limit definition takes
    // epsilon > 0.
    if (!(epsilon >= 0.0)) throw InvalidValueError("epsilon", "must be >= 0");
    double sum = 0.0;
    for (double dk : d) {
        if (!(dk >= 0.0 && dk <= 1.0))
            throw InvalidValueError("d", "entries must lie in [0, 1]");
        sum += dk;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidValueError("d", "must sum to 1 within 1e-12");
}

double energy(const ModelParams& params, const DisorderSample& disorder,
              const SpinConfiguration& sigma) {
    if (disorder.size() != params.N)
        throw DimensionError("disorder", params.N, disorder.size());
    if (sigma.size() != params.N)
        throw DimensionError("sigma", params.N, sigma.size());
    const int n = params.N;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const int ci = sigma.color(i);
        for (int j = 0; j < n; ++j) {
            if (ci == sigma.color(j)) sum += disorder(i, j);
        }
    }
    return sum / std::sqrt(static_cast<double>(n));
}

std::int64_t bias_term(const SpinConfiguration& sigma) {
    std::int64_t total = 0;
    for (int nk : sigma.counts())
        total += static_cast<std::int64_t>(nk) * nk;
    return total;
}

bool in_sector(const SpinConfiguration& sigma, const ColorProfile& profile) {
    if (static_cast<int>(profile.d.size()) != sigma.kappa())
        throw DimensionError("profile.d", sigma.kappa(), profile.d.size());
    const double n = static_cast<double>(sigma.size());
    for (int k = 0; k < sigma.kappa(); ++k) {
        const double proportion = static_cast<double>(sigma.count(k)) / n;
        if (std::abs(proportion - profile.d[k]) > profile.epsilon)
            return false;
    }
    return true;
}

double sk_energy(const DisorderSample& disorder, std::span<const int> spins) {
    const int n = disorder.size();
    if (static_cast<int>(spins.size()) != n)
        throw DimensionError("spins", n, spins.size());
    for (int s : spins) {
        if (s != 1 && s != -1)
            throw InvalidValueError("spins", "entries must be +1 or -1");
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            sum += disorder(i, j) * spins[i] * spins[j];
        }
    }
    return sum / std::sqrt(static_cast<double>(n));
}

std::vector<int> to_sk_spins(const SpinConfiguration& sigma) {
    if (sigma.kappa() != 2)
        throw InvalidValueError("kappa", "SK mapping requires kappa = 2");
    std::vector<int> spins(sigma.size());
    for (int i = 0; i < sigma.size(); ++i)
        spins[i] = sigma.color(i) == 0 ? 1 : -1;
    return spins;
}

double recolor_delta(const DisorderSample& disorder,
                     const SpinConfiguration& sigma, int site, int new_color) {
    const int n = disorder.size();
    const int old_color = sigma.color(site);
    if (new_color == old_color) return 0.0;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j == site) continue;
        const int cj = sigma.color(j);
        if (cj == new_color)
            sum += disorder(site, j) + disorder(j, site);
        else if (cj == old_color)
            sum -= disorder(site, j) + disorder(j, site);
    }
    return sum / std::sqrt(static_cast<double>(n));
}

void local_fields(const DisorderSample& disorder,
                  const SpinConfiguration& sigma, int site,
                  std::span<double> out) {
    const int n = disorder.size();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& f : out) f = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j == site) continue;
        out[sigma.color(j)] += disorder(site, j) + disorder(j, site);
    }
    for (double& f : out) f *= inv_sqrt_n;
}

namespace detail {

std::vector<double> symmetrized_couplings(const DisorderSample& disorder) {
    const int n = disorder.size();
    std::vector<double> sym(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym[static_cast<std::size_t>(i) * n + j] =
                disorder(i, j) + disorder(j, i);
    return sym;
}

void local_fields_sym(std::span<const double> sym, int n,
                      const SpinConfiguration& sigma, int site,
                      std::span<double> out) {
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& f : out) f = 0.0;
    const double* row = sym.data() + static_cast<std::size_t>(site) * n;
    for (int j = 0; j < n; ++j) {
        if (j == site) continue;
        out[sigma.color(j)] += row[j];
    }
    for (double& f : out) f *= inv_sqrt_n;
}

}  // namespace detail

}  // namespace potts
