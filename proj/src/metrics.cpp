#include "speccomm/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace speccomm {

namespace {

// Hungarian algorithm (shortest augmenting paths with potentials) on a
// square min-cost matrix; returns the column matched to each row.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

long long brute_force_best(const Eigen::MatrixXi& c, std::vector<int>& best_map) {
  // Injective maps from the smaller label side into the larger one.
  const int kt = static_cast<int>(c.rows());
  const int ke = static_cast<int>(c.cols());
  const bool est_small = ke <= kt;
  const int small = est_small ? ke : kt;
  const int large = est_small ? kt : ke;
  std::vector<int> pick(small, -1);
  std::vector<bool> used(large, false);
  std::vector<int> best_pick;
  long long best = -1;
  auto recurse = [&](auto&& self, int s, long long acc) -> void {
    if (s == small) {
      if (acc > best) {
        best = acc;
        best_pick = pick;
      }
      return;
    }
    for (int l = 0; l < large; ++l) {
      if (used[l]) continue;
      used[l] = true;
      pick[s] = l;
      self(self, s + 1, acc + (est_small ? c(l, s) : c(s, l)));
      used[l] = false;
    }
  };
  recurse(recurse, 0, 0);

  best_map.assign(ke, 0);  // estimated label -> true label (0 = unmatched)
  if (est_small) {
    for (int e = 0; e < ke; ++e) best_map[e] = best_pick[e] + 1;
  } else {
    for (int t = 0; t < kt; ++t) best_map[best_pick[t]] = t + 1;
  }
  return best;
}

}  // namespace

std::vector<int> max_assignment(const Eigen::MatrixXi& scores) {
  const int rows = static_cast<int>(scores.rows());
  const int cols = static_cast<int>(scores.cols());
  const int m = std::max(rows, cols);
  const double top = static_cast<double>(scores.maxCoeff());
  Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(m, m, top);
  cost.topLeftCorner(rows, cols) =
      (top - scores.cast<double>().array()).matrix();
  auto row_to_col = min_cost_assignment(cost);
  row_to_col.resize(rows);
  for (int r = 0; r < rows; ++r)
    if (row_to_col[r] >= cols) row_to_col[r] = -1;
  return row_to_col;
}

ErrorReport relative_error_rate(const Labels& estimated, const Labels& truth) {
  if (estimated.size() != truth.size())
    throw std::invalid_argument("label vectors differ in length");
  const int n = static_cast<int>(truth.size());
  if (n == 0) throw std::invalid_argument("empty label vectors");
  int kt = 0, ke = 0;
  for (int i = 0; i < n; ++i) {
    if (truth[i] < 1 || estimated[i] < 1)
      throw std::invalid_argument("labels must be >= 1");
    kt = std::max(kt, truth[i]);
    ke = std::max(ke, estimated[i]);
  }

  ErrorReport rep;
  rep.confusion = Eigen::MatrixXi::Zero(kt, ke);
  for (int i = 0; i < n; ++i) ++rep.confusion(truth[i] - 1, estimated[i] - 1);

  long long matched;
  if (std::max(kt, ke) <= 8) {
    matched = brute_force_best(rep.confusion, rep.best_permutation);
  } else {
    // Pad to square so the assignment is a bijection; fake pairs score 0.
    const auto row_to_col = max_assignment(rep.confusion);  // true -> est
    rep.best_permutation.assign(ke, 0);
    matched = 0;
    for (int t = 0; t < kt; ++t) {
      if (row_to_col[t] < 0) continue;
      rep.best_permutation[row_to_col[t]] = t + 1;
      matched += rep.confusion(t, row_to_col[t]);
    }
  }
  rep.error_rate = static_cast<double>(n - matched) / n;
  return rep;
}

}  // namespace speccomm
