#include "speccomm/checks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"

namespace speccomm {

double eigen_transform_check(const ModelSpec& spec) {
  const auto pop = population(spec);
  const auto full = eig_sym(pop.expected_adjacency);
  const auto reduced = eig_sym(pop.reduced);
  double worst = 0.0;
  for (int i = 0; i < spec.k; ++i) {
    const double expected = pop.scale * reduced.eigenvalues(i);
    const double got = full.eigenvalues(i);
    worst = std::max(worst, std::abs(got - expected) /
                                std::max(1.0, std::abs(expected)));
  }
  return worst;
}

NoiseNormReport noise_norm(const Matrix& a, const ModelSpec& spec) {
  const auto pop = population(spec);
  NoiseNormReport rep;
  rep.value = spectral_norm_sym(a - pop.expected_adjacency) /
              std::sqrt(static_cast<double>(spec.n));
  rep.bound = 2.0 * max_offdiag_sd(spec);
  return rep;
}

std::vector<std::pair<int, int>> group_eigenvalues(const Vector& values,
                                                   double tol) {
  if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
  std::vector<std::pair<int, int>> groups;
  const int k = static_cast<int>(values.size());
  int start = 0;
  for (int i = 1; i <= k; ++i) {
    if (i == k || std::abs(values(i) - values(start)) >
                      tol * std::max(1.0, std::abs(values(start)))) {
      groups.emplace_back(start, i - 1);
      start = i;
    }
  }
  return groups;
}

std::vector<int> match_groups(const Vector& sample_values,
                              const Vector& group_gammas,
                              const std::vector<std::pair<int, int>>& groups) {
  const int k = static_cast<int>(sample_values.size());
  const int g = static_cast<int>(group_gammas.size());
  std::vector<int> assigned(k, -1);
  std::vector<int> fill(g, 0);
  for (int i = 0; i < k; ++i) {
    int best = 0;
    double bd = std::abs(sample_values(i) - group_gammas(0));
    bool tie = false;
    for (int t = 1; t < g; ++t) {
      const double d = std::abs(sample_values(i) - group_gammas(t));
      if (d < bd) {
        bd = d;
        best = t;
        tie = false;
      } else if (d == bd) {
        tie = true;
      }
    }
    if (tie)
      throw std::runtime_error(
          "group matching ambiguity: sample eigenvalue " +
          std::to_string(sample_values(i)) +
          " is equidistant from two population groups");
    assigned[i] = best;
    ++fill[best];
  }
  for (int t = 0; t < g; ++t) {
    const int want = groups[t].second - groups[t].first + 1;
    if (fill[t] != want)
      throw std::runtime_error(
          "group matching mismatch: population group " + std::to_string(t) +
          " received " + std::to_string(fill[t]) + " sample eigenvalues, " +
          "expected " + std::to_string(want));
  }
  for (int i = 1; i < k; ++i)
    if (assigned[i] < assigned[i - 1])
      throw std::runtime_error("group matching is not order-preserving");
  return assigned;
}

LinfReport linf_residual(const Matrix& a, const ModelSpec& spec,
                         double group_tol) {
  return linf_residual(eig_sym(a), spec, group_tol);
}

LinfReport linf_residual(const SpectralDecomposition& d, const ModelSpec& spec,
                         double group_tol) {
  const int n = spec.n;
  const int k = spec.k;
  const auto pop = population_eigens(spec);
  const auto groups = group_eigenvalues(pop.values, group_tol);

  LinfReport rep;

  // Gap condition (distinct group values should be well separated).
  double max_gamma = 0.0;
  for (int t = 0; t < static_cast<int>(groups.size()); ++t)
    max_gamma = std::max(max_gamma, std::abs(pop.values(groups[t].first)));
  for (std::size_t t = 1; t < groups.size(); ++t) {
    const double gap = std::abs(pop.values(groups[t].first) -
                                pop.values(groups[t - 1].first));
    if (gap < 1e-3 * std::max(1.0, max_gamma))
      rep.warnings.push_back(
          "small population eigenvalue gap between groups " +
          std::to_string(t - 1) + " and " + std::to_string(t));
  }

  Vector gammas(groups.size());
  for (std::size_t t = 0; t < groups.size(); ++t)
    gammas(t) = pop.values(groups[t].first);

  const Vector sample = d.eigenvalues.head(k);
  match_groups(sample, gammas, groups);  // throws on ambiguity

  bool all_singleton = true;
  for (const auto& [first, last] : groups) {
    const int m = last - first + 1;
    all_singleton = all_singleton && m == 1;
    const Matrix u_t = d.eigenvectors.middleCols(first, m);
    const Matrix q_t = pop.vectors.middleCols(first, m);
    const Matrix t_t = q_t.transpose() * u_t;
    rep.per_group.push_back((u_t - q_t * t_t).cwiseAbs().maxCoeff());
    rep.tt_residual.push_back(
        (t_t.transpose() * t_t - Matrix::Identity(m, m)).norm());
  }
  rep.value = *std::max_element(rep.per_group.begin(), rep.per_group.end());
  rep.normalized = rep.value * n / std::log(static_cast<double>(n));

  if (all_singleton) {
    rep.per_vector = 0.0;
    for (int i = 0; i < k; ++i) {
      const double s =
          pop.vectors.col(i).dot(d.eigenvectors.col(i)) >= 0.0 ? 1.0 : -1.0;
      rep.per_vector = std::max(
          rep.per_vector,
          (d.eigenvectors.col(i) - s * pop.vectors.col(i)).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

bool population_ratio_check(const ModelSpec& spec) {
  spec.validate();
  if (spec.k == 1) return true;  // no pairs
  const auto pop = population(spec);
  const auto d = eig_sym(pop.reduced);
  const double zero_tol = 1e-12;
  for (int k1 = 0; k1 < spec.k; ++k1)
    for (int k2 = k1 + 1; k2 < spec.k; ++k2) {
      bool distinguished = false;
      for (int z = 0; z < spec.k && !distinguished; ++z) {
        const double a = d.eigenvectors(k1, z);
        const double b = d.eigenvectors(k2, z);
        const bool za = std::abs(a) <= zero_tol, zb = std::abs(b) <= zero_tol;
        if (za && zb) continue;
        if (za != zb)
          distinguished = true;
        else if (std::abs(a / b - 1.0) > 1e-6)
          distinguished = true;
      }
      if (!distinguished) return false;
    }
  return true;
}

SeparationReport row_separation(const Matrix& a, const Labels& truth, int k,
                                std::uint64_t sample_seed) {
  return row_separation(eig_sym(a), truth, k, sample_seed);
}

SeparationReport row_separation(const SpectralDecomposition& d,
                                const Labels& truth, int k,
                                std::uint64_t sample_seed) {
  const int n = static_cast<int>(d.eigenvectors.rows());
  if (static_cast<int>(truth.size()) != n)
    throw std::invalid_argument("truth length != n");
  const Matrix u = leading_eigenspace(d, k);

  SeparationReport rep;
  std::vector<int> live;
  Matrix rows(n, k);
  for (int i = 0; i < n; ++i) {
    const double norm = u.row(i).norm();
    if (norm == 0.0) {
      ++rep.zero_rows;
      continue;
    }
    rows.row(static_cast<int>(live.size())) = u.row(i) / norm;
    live.push_back(i);
  }
  const int m = static_cast<int>(live.size());
  rep.max_within = 0.0;
  rep.min_cross = 2.0;

  auto visit = [&](int i, int j) {
    const double d = (rows.row(i) - rows.row(j)).norm();
    if (truth[live[i]] == truth[live[j]])
      rep.max_within = std::max(rep.max_within, d);
    else
      rep.min_cross = std::min(rep.min_cross, d);
    ++rep.pairs_sampled;
  };

  const long long all_pairs = static_cast<long long>(m) * (m - 1) / 2;
  if (all_pairs <= 4'000'000) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) visit(i, j);
  } else {
    auto eng = make_engine(sample_seed);
    const long long target = std::max<long long>(200'000, 2LL * m);
    for (long long t = 0; t < target; ++t) {
      const int i = static_cast<int>(uniform_index(eng, m));
      int j = static_cast<int>(uniform_index(eng, m - 1));
      if (j >= i) ++j;
      visit(std::min(i, j), std::max(i, j));
    }
  }
  return rep;
}

}  // namespace speccomm
