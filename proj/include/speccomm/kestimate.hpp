#pragma once

#include <utility>
#include <vector>

#include "spectral.hpp"
#include "types.hpp"

namespace speccomm {

struct KEstimate {
  int k_hat = 0;                      // 0 when no ratio clears the threshold
  double threshold = 0.0;             // C_n used
  double mean_abs_eigenvalue = 0.0;   // lbar, over all n eigenvalues
  Vector ratios;                      // |l_i / lbar|
};

// C_n = delta * n^{3/4}; delta must lie in (0, 1).
double default_threshold(int n, double delta);

KEstimate estimate_k(const SpectralDecomposition& d, double threshold);

// One estimate per delta; k_hat is non-increasing in delta.
std::vector<std::pair<double, int>> delta_sweep(const SpectralDecomposition& d,
                                                int n,
                                                const std::vector<double>& deltas);

}  // namespace speccomm
