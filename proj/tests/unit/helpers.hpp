#ifndef POTTS_TEST_HELPERS_HPP
#define POTTS_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "potts/model.hpp"

namespace potts::testing {

/// Disorder from an explicit row-major matrix, for hand-computed cases.
inline DisorderSample disorder_from(int n, std::vector<double> g) {
    return DisorderSample(n, std::move(g), 0);
}

/// External (1-based) color sequence to an internal configuration.
inline SpinConfiguration config_from_1based(std::vector<int> colors,
                                            int kappa) {
    for (int& c : colors) --c;
    return SpinConfiguration(std::move(colors), kappa);
}

inline SpinConfiguration random_config(int n, int kappa, std::mt19937_64& eng) {
    std::uniform_int_distribution<int> dist(0, kappa - 1);
    std::vector<int> colors(n);
    for (int& c : colors) c = dist(eng);
    return SpinConfiguration(std::move(colors), kappa);
}

inline std::vector<double> random_simplex_point(int kappa,
                                                std::mt19937_64& eng) {
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    std::vector<double> d(kappa);
    double total = 0.0;
    for (double& dk : d) {
        dk = dist(eng);
        total += dk;
    }
    double partial = 0.0;
    for (int k = 0; k + 1 < kappa; ++k) {
        d[k] /= total;
        partial += d[k];
    }
    d[kappa - 1] = 1.0 - partial;  // exact simplex sum
    return d;
}

}  // namespace potts::testing

#endif
