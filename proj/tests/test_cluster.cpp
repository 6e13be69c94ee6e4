#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "speccomm/bench.hpp"
#include "speccomm/cluster.hpp"
#include "speccomm/kestimate.hpp"
#include "speccomm/metrics.hpp"
#include "speccomm/model.hpp"
#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"

using namespace speccomm;

namespace {

// two disconnected 5-cliques: block-diagonal rank-2 structure
Matrix two_cliques() {
  Labels g(10);
  for (int i = 0; i < 10; ++i) g[i] = i < 5 ? 1 : 2;
  Matrix p(2, 2);
  p << 1, 0, 0, 1;
  return generate(make_spec(10, 2, g, p, {}, ModelKind::BM), 1);
}

Labels clique_truth() {
  Labels g(10);
  for (int i = 0; i < 10; ++i) g[i] = i < 5 ? 1 : 2;
  return g;
}

double labeling_objective(const Matrix& pts, const Labels& labels, int k) {
  Matrix centers = Matrix::Zero(k, pts.cols());
  std::vector<int> count(k, 0);
  for (int i = 0; i < pts.rows(); ++i) {
    centers.row(labels[i] - 1) += pts.row(i);
    ++count[labels[i] - 1];
  }
  for (int c = 0; c < k; ++c)
    if (count[c] > 0) centers.row(c) /= count[c];
  double obj = 0.0;
  for (int i = 0; i < pts.rows(); ++i)
    obj += (pts.row(i) - centers.row(labels[i] - 1)).squaredNorm();
  return obj;
}

}  // namespace

TEST_CASE("kmeans splits well-separated clouds exactly") {
  Matrix pts(8, 2);
  pts << 0, 0, 1, 0, 0, 1, 1, 1, 10, 10, 11, 10, 10, 11, 11, 11;
  const auto res = kmeans(pts, 2, {}, 3);
  CHECK(res.objective == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(res.labels[0] == res.labels[1]);
  CHECK(res.labels[0] == res.labels[2]);
  CHECK(res.labels[0] == res.labels[3]);
  CHECK(res.labels[4] == res.labels[5]);
  CHECK(res.labels[4] == res.labels[6]);
  CHECK(res.labels[4] == res.labels[7]);
  CHECK(res.labels[0] != res.labels[4]);
}

TEST_CASE("kmeans on identical points has objective zero") {
  const Matrix pts = Matrix::Constant(7, 3, 2.5);
  const auto res = kmeans(pts, 1, {}, 1);
  CHECK(res.objective == doctest::Approx(0.0));
  for (int x : res.labels) CHECK(x == 1);
}

TEST_CASE("kmeans beats ten thousand random labelings") {
  auto eng = make_engine(99);
  Matrix pts(40, 2);
  for (int i = 0; i < 40; ++i) {
    pts(i, 0) = uniform01(eng);
    pts(i, 1) = uniform01(eng);
  }
  const auto res = kmeans(pts, 3, {}, 5);
  double best_random = 1e300;
  Labels labels(40);
  for (int t = 0; t < 10000; ++t) {
    for (int i = 0; i < 40; ++i)
      labels[i] = 1 + static_cast<int>(uniform_index(eng, 3));
    bool seen[3] = {};
    for (int x : labels) seen[x - 1] = true;
    if (!(seen[0] && seen[1] && seen[2])) continue;
    best_random = std::min(best_random, labeling_objective(pts, labels, 3));
  }
  CHECK(res.objective <= best_random + 1e-9);
}

TEST_CASE("kmeans objective never increases across iterations") {
  auto eng = make_engine(4);
  Matrix pts(60, 3);
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 3; ++j) pts(i, j) = uniform01(eng);
  std::vector<double> history;
  kmeans(pts, 4, {}, 11, &history);
  REQUIRE(history.size() >= 1);
  for (std::size_t i = 1; i < history.size(); ++i)
    CHECK(history[i] <= history[i - 1] + 1e-12);
}

TEST_CASE("kmeans handles more clusters than distinct points") {
  Matrix pts(5, 1);
  pts << 0, 0, 0, 10, 10;
  const auto res = kmeans(pts, 3, {}, 2);
  for (int x : res.labels) {
    CHECK(x >= 1);
    CHECK(x <= 3);
  }
  CHECK(res.objective >= 0.0);
  CHECK(kmeans(pts, 3, {}, 2).labels == res.labels);
}

TEST_CASE("kmeans rejects bad shapes") {
  CHECK_THROWS_AS(kmeans(Matrix::Zero(3, 2), 0, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans(Matrix::Zero(3, 2), 4, {}, 1), std::invalid_argument);
}

TEST_CASE("single-column ratio matrix is the sign column") {
  const int n = 16;
  const Matrix u = Matrix::Constant(n, 1, 1.0 / 4.0);
  const auto rm = ratio_matrix(u, n, 1);
  for (int i = 0; i < n; ++i) {
    CHECK(rm.pi(i, 0) == doctest::Approx(1.0));
    CHECK_FALSE(rm.truncation_mask(i, 0));
  }
}

TEST_CASE("small components are truncated to zero") {
  Matrix u(4, 2);
  u << 0.9, 1e-9, 0.9, 1e-9, 1e-9, 0.9, 1e-9, 0.9;
  const auto rm = ratio_matrix(u, 4, 2);
  CHECK(rm.pi(0, 0) == doctest::Approx(1.0));
  CHECK(rm.pi(0, 1) == 0.0);
  CHECK(rm.truncation_mask(0, 1));
  CHECK_FALSE(rm.truncation_mask(0, 0));
  // cutoff definition: sum of |entries| / (k sqrt(n) ln n)
  const double cutoff = (0.9 + 1e-9) / (2.0 * 2.0 * std::log(4.0));
  CHECK(rm.cutoffs(0) == doctest::Approx(cutoff).epsilon(1e-12));
  // row norms of untruncated rows are 1
  CHECK(rm.pi.row(0).norm() == doctest::Approx(1.0));
}

TEST_CASE("all-zero rows stay zero and are fully masked") {
  Matrix u = Matrix::Zero(5, 2);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  const auto rm = ratio_matrix(u, 5, 2);
  for (int z = 0; z < 2; ++z) {
    CHECK(rm.pi(4, z) == 0.0);
    CHECK(rm.truncation_mask(4, z));
  }
  CHECK(rm.cutoffs(4) == 0.0);
}

TEST_CASE("ratio rows separate communities on a DCBM sample") {
  const auto spec = exp3_config(1000, 2).realize(6);
  const Matrix a = generate(spec, derive_seed(6, 0xAD7ULL));
  const auto rm = ratio_matrix(leading_eigenspace(eig_sym(a), 2), 1000, 2);

  const long truncated = rm.truncation_mask.cast<long>().sum();
  CHECK(truncated < 0.05 * 2 * 1000);

  // untruncated rows: typical same-community distances sit far below the
  // cross-community ones (the worst few weak-degree rows are noise, so the
  // comparison is between medians, not extremes)
  std::vector<double> within, cross;
  for (int i = 0; i < 1000; i += 3)
    for (int j = i + 1; j < 1000; j += 3) {
      if (rm.truncation_mask.row(i).any() || rm.truncation_mask.row(j).any())
        continue;
      const double dist = (rm.pi.row(i) - rm.pi.row(j)).norm();
      (spec.membership[i] == spec.membership[j] ? within : cross)
          .push_back(dist);
    }
  auto median = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  const double med_within = median(within), med_cross = median(cross);
  CHECK(med_within + 1.0 < med_cross);
  CHECK(med_cross == doctest::Approx(std::sqrt(2.0)).epsilon(0.08));
}

TEST_CASE("population ratio rows are constant within communities") {
  const int n = 200;
  Labels g(n);
  for (int i = 0; i < n; ++i) g[i] = i % 2 + 1;
  Matrix p(2, 2);
  p << 1, 0.5, 0.5, 1;
  const auto spec =
      make_spec(n, 2, g, p, theta_power(n, 0.015, 0.8, 2.0), ModelKind::DCBM);
  const Matrix ea = population(spec).expected_adjacency;
  const auto rm = ratio_matrix(leading_eigenspace(eig_sym(ea), 2), n, 2);
  for (int c = 1; c <= 2; ++c) {
    int first = -1;
    double spread = 0.0;
    for (int i = 0; i < n; ++i) {
      if (g[i] != c) continue;
      if (first < 0) {
        first = i;
        continue;
      }
      spread =
          std::max(spread, (rm.pi.row(i) - rm.pi.row(first)).cwiseAbs().maxCoeff());
    }
    CHECK(spread <= 1e-8);
  }
}

TEST_CASE("every method recovers disconnected cliques") {
  const Matrix a = two_cliques();
  const Labels truth = clique_truth();
  for (const char* method : {"scdre", "opca", "npca", "score"}) {
    DetectOptions opt;
    opt.k = 2;
    const auto res = detect(a, method, opt, 7);
    CHECK(res.k_used == 2);
    CHECK(relative_error_rate(truth, res.labels).error_rate == 0.0);
  }
}

TEST_CASE("scdre with automatic k on a strong two-block signal") {
  const auto spec = exp1_config(400, 2).realize(15);
  const Matrix a = generate(spec, derive_seed(15, 0xAD7ULL));
  DetectOptions opt;  // k = 0 -> estimate
  const auto res = scdre(a, opt, 3);
  CHECK(res.k_used == 2);
  CHECK(relative_error_rate(spec.membership, res.labels).error_rate < 0.05);
}

TEST_CASE("scdre errors out when no structure is detected") {
  DetectOptions opt;
  REQUIRE(default_threshold(120, opt.delta) > 1.0);
  CHECK_THROWS_WITH_AS(scdre(Matrix::Identity(120, 120), opt, 1),
                       "no community structure detected (k_hat = 0)",
                       std::runtime_error);
}

TEST_CASE("estimated k of one labels every node 1 without k-means") {
  const auto spec = make_spec(60, 1, Labels(60, 1), Matrix::Ones(1, 1), {},
                              ModelKind::BM);
  const Matrix a = generate(spec, 1);  // complete graph
  DetectOptions opt;
  const auto res = scdre(a, opt, 1);
  CHECK(res.k_used == 1);
  for (int x : res.labels) CHECK(x == 1);
  CHECK(res.objective == 0.0);

  // baselines take the same k = 1 early exit
  CHECK(opca(a, 1, {}, 1).labels == res.labels);
  CHECK(npca(a, 1, {}, 1).labels == res.labels);
  CHECK(score(a, 1, {}, 1).labels == res.labels);
}

TEST_CASE("column sign flips do not change k-means output") {
  const auto spec = exp3_config(300, 2).realize(8);
  const Matrix a = generate(spec, derive_seed(8, 0xAD7ULL));
  const Matrix u = leading_eigenspace(eig_sym(a), 2);
  Matrix flipped = u;
  flipped.col(1) *= -1.0;

  const auto rm = ratio_matrix(u, 300, 2);
  const auto rf = ratio_matrix(flipped, 300, 2);
  CHECK((rm.pi.col(0) - rf.pi.col(0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((rm.pi.col(1) + rf.pi.col(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((rm.truncation_mask == rf.truncation_mask).all());

  const auto k1 = kmeans(rm.pi, 2, {}, 5);
  const auto k2 = kmeans(rf.pi, 2, {}, 5);
  CHECK(k1.labels == k2.labels);
  CHECK(k1.objective == doctest::Approx(k2.objective).epsilon(1e-12));
}

TEST_CASE("node relabeling permutes the output labels") {
  const auto spec = exp1_config(100, 2).realize(23);
  const Matrix a = generate(spec, derive_seed(23, 0xAD7ULL));

  // fixed permutation: reverse
  const int n = 100;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = a(perm[i], perm[j]);

  DetectOptions opt;
  opt.k = 2;
  const auto la = scdre(a, opt, 9);
  const auto lb = scdre(b, opt, 9);
  Labels lb_unperm(n);
  for (int i = 0; i < n; ++i) lb_unperm[perm[i]] = lb.labels[i];
  CHECK(relative_error_rate(la.labels, lb_unperm).error_rate == 0.0);
}

TEST_CASE("detect dispatcher validates the method name") {
  DetectOptions opt;
  opt.k = 2;
  CHECK_THROWS_AS(detect(two_cliques(), "louvain", opt, 1),
                  std::invalid_argument);
}

TEST_CASE("non-scdre methods resolve auto k from the spectrum") {
  const auto spec = exp1_config(400, 3).realize(31);
  const Matrix a = generate(spec, derive_seed(31, 0xAD7ULL));
  DetectOptions opt;  // auto
  const auto res = detect(a, "opca", opt, 2);
  CHECK(res.k_used == 3);
  CHECK(res.method == "opca");
}
