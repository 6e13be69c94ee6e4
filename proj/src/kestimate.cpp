#include "speccomm/kestimate.hpp"

#include <cmath>
#include <stdexcept>

namespace speccomm {

double default_threshold(int n, double delta) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
  return delta * std::pow(static_cast<double>(n), 0.75);
}

KEstimate estimate_k(const SpectralDecomposition& d, double threshold) {
  const int n = static_cast<int>(d.eigenvalues.size());
  KEstimate est;
  est.threshold = threshold;
  est.mean_abs_eigenvalue = d.eigenvalues.cwiseAbs().mean();
  if (!(est.mean_abs_eigenvalue > 0.0))
    throw std::runtime_error("mean |eigenvalue| is zero");
  est.ratios = d.eigenvalues.cwiseAbs() / est.mean_abs_eigenvalue;
  est.k_hat = 0;
  for (int i = 0; i < n; ++i)
    if (est.ratios(i) > threshold) est.k_hat = i + 1;
  return est;
}

std::vector<std::pair<double, int>> delta_sweep(
    const SpectralDecomposition& d, int n, const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("empty delta list");
  std::vector<std::pair<double, int>> out;
  out.reserve(deltas.size());
  for (double delta : deltas)
    out.emplace_back(delta, estimate_k(d, default_threshold(n, delta)).k_hat);
  return out;
}

}  // namespace speccomm
