#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "spectral.hpp"
#include "types.hpp"

namespace speccomm {

// Max relative deviation between the K leading eigenvalues of E(A) and
// scale * eigenvalues(reduced); exact identity, expected <= 1e-8.
double eigen_transform_check(const ModelSpec& spec);

struct NoiseNormReport {
  double value = 0.0;  // ||A - E(A)|| / sqrt(n)
  double bound = 0.0;  // 2 * max off-diagonal entry sd
};

NoiseNormReport noise_norm(const Matrix& a, const ModelSpec& spec);

// Contiguous groups of equal population eigenvalues (within
// tol * max(1, |value|)); input must be the leading-K values in the module's
// order. Returns [first, last] index pairs.
std::vector<std::pair<int, int>> group_eigenvalues(const Vector& values,
                                                   double tol);

// Assigns each of the K leading sample eigenvalues to the nearest population
// group value; throws when some value is exactly equidistant from two groups
// or the assignment does not fill every group in order. Returns the group
// index per sample position. Exposed for direct testing.
std::vector<int> match_groups(const Vector& sample_values,
                              const Vector& group_gammas,
                              const std::vector<std::pair<int, int>>& groups);

struct LinfReport {
  std::vector<double> per_group;    // ||U_t - Q_t T_t||_max per group
  double value = 0.0;               // max over groups
  double normalized = 0.0;          // value * n / ln n
  std::vector<double> tt_residual;  // ||T_t' T_t - I||_F per group
  double per_vector = -1.0;         // per-vector bound variant; -1 if any group is not a singleton
  std::vector<std::string> warnings;
};

LinfReport linf_residual(const Matrix& a, const ModelSpec& spec,
                         double group_tol = 1e-8);

// Overload reusing a precomputed decomposition of the sample matrix.
LinfReport linf_residual(const SpectralDecomposition& d, const ModelSpec& spec,
                         double group_tol = 1e-8);

// Every community pair must be distinguished by some
// reduced-eigenvector coordinate ratio differing from 1 (zero/non-zero
// mismatches count as distinguishing).
bool population_ratio_check(const ModelSpec& spec);

struct SeparationReport {
  double max_within = 0.0;
  double min_cross = 0.0;
  long long pairs_sampled = 0;
  int zero_rows = 0;  // excluded rows
};

// Pairwise distances between unit-normalized rows of the leading-k
// eigenspace of a; all pairs when feasible, else >= 10^5 sampled pairs.
SeparationReport row_separation(const Matrix& a, const Labels& truth, int k,
                                std::uint64_t sample_seed = 1);
SeparationReport row_separation(const SpectralDecomposition& d,
                                const Labels& truth, int k,
                                std::uint64_t sample_seed = 1);

}  // namespace speccomm
