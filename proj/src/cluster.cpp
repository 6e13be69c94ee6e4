#include "speccomm/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "speccomm/kestimate.hpp"
#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"

namespace speccomm {

namespace {

double sqdist(const Matrix& pts, int i, const Matrix& centers, int c) {
  double s = 0.0;
  for (int d = 0; d < pts.cols(); ++d) {
    const double diff = pts(i, d) - centers(c, d);
    s += diff * diff;
  }
  return s;
}

// k-means++ seeding: first center uniform, then squared-distance weighted.
Matrix seed_centers(const Matrix& pts, int k, std::mt19937_64& eng) {
  const int n = static_cast<int>(pts.rows());
  Matrix centers(k, pts.cols());
  centers.row(0) = pts.row(static_cast<int>(uniform_index(eng, n)));
  Vector d2(n);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < c; ++j) best = std::min(best, sqdist(pts, i, centers, j));
      d2(i) = best;
      total += best;
    }
    int pick;
    if (total > 0.0) {
      double target = uniform01(eng) * total, acc = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc >= target) { pick = i; break; }
      }
    } else {
      pick = static_cast<int>(uniform_index(eng, n));  // all points coincide
    }
    centers.row(c) = pts.row(pick);
  }
  return centers;
}

struct LloydRun {
  Labels labels;
  double objective;
  std::vector<double> history;
};

LloydRun lloyd(const Matrix& pts, int k, const KMeansConfig& cfg,
               std::mt19937_64& eng) {
  const int n = static_cast<int>(pts.rows());
  Matrix centers = seed_centers(pts, k, eng);
  LloydRun run;
  run.labels.assign(n, 1);
  Labels prev;
  double prev_obj = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // Assignment; nearest center, lowest index on ties.
    double obj = 0.0;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double bd = sqdist(pts, i, centers, 0);
      for (int c = 1; c < k; ++c) {
        const double d = sqdist(pts, i, centers, c);
        if (d < bd) { bd = d; best = c; }
      }
      run.labels[i] = best + 1;
      obj += bd;
    }
    run.history.push_back(obj);
    run.objective = obj;
    const bool settled = (run.labels == prev) ||
                         (prev_obj - obj <= cfg.tol * std::max(1.0, prev_obj) &&
                          iter > 0);
    if (settled) break;
    prev = run.labels;
    prev_obj = obj;

    // Update step.
    Matrix sums = Matrix::Zero(k, pts.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(run.labels[i] - 1) += pts.row(i);
      ++counts[run.labels[i] - 1];
    }
    for (int c = 0; c < k; ++c)
      if (counts[c] > 0) centers.row(c) = sums.row(c) / counts[c];

    // Empty-cluster repair: re-seed with the point farthest from its center.
    std::vector<bool> taken(n, false);
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int far = -1;
      double fd = -1.0;
      for (int i = 0; i < n; ++i) {
        if (taken[i]) continue;
        const double d = sqdist(pts, i, centers, run.labels[i] - 1);
        if (d > fd) { fd = d; far = i; }
      }
      if (far >= 0) {
        centers.row(c) = pts.row(far);
        taken[far] = true;
      }
    }
  }
  return run;
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, const KMeansConfig& cfg,
                    std::uint64_t seed, std::vector<double>* history) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || k > n) throw std::invalid_argument("k outside 1..n");
  if (points.cols() < 1) throw std::invalid_argument("points need >= 1 column");
  if (k == 1) {
    Matrix center = points.colwise().mean();
    double obj = 0.0;
    for (int i = 0; i < n; ++i) obj += sqdist(points, i, center, 0);
    if (history) *history = {obj};
    return {Labels(n, 1), obj};
  }

  KMeansResult best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<double> best_history;
  for (int r = 0; r < cfg.restarts; ++r) {
    auto eng = make_engine(derive_seed(seed, static_cast<std::uint64_t>(r)));
    LloydRun run = lloyd(points, k, cfg, eng);
    if (run.objective < best.objective) {
      best.objective = run.objective;
      best.labels = std::move(run.labels);
      best_history = std::move(run.history);
    }
  }
  if (history) *history = std::move(best_history);
  return best;
}

RatioMatrix ratio_matrix(const Matrix& u, int n, int k) {
  if (u.rows() != n || u.cols() != k)
    throw std::invalid_argument("u must be n x k");
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (k < 1) throw std::invalid_argument("need k >= 1");
  RatioMatrix rm;
  rm.pi = Matrix::Zero(n, k);
  rm.cutoffs = Vector(n);
  rm.truncation_mask.resize(n, k);
  rm.truncation_mask.setConstant(false);
  const double denom = k * std::sqrt(static_cast<double>(n)) * std::log(n);
  for (int i = 0; i < n; ++i) {
    const double norm = u.row(i).norm();
    rm.cutoffs(i) = u.row(i).cwiseAbs().sum() / denom;
    for (int z = 0; z < k; ++z) {
      if (norm == 0.0 || std::abs(u(i, z)) <= rm.cutoffs(i))
        rm.truncation_mask(i, z) = true;
      else
        rm.pi(i, z) = u(i, z) / norm;
    }
  }
  return rm;
}

CommunityAssignment scdre(const Matrix& a, const DetectOptions& opt,
                          std::uint64_t seed) {
  const int n = static_cast<int>(a.rows());
  const auto d = eig_sym(a);
  int k = opt.k;
  if (k <= 0) {
    k = estimate_k(d, default_threshold(n, opt.delta)).k_hat;
    if (k == 0)
      throw std::runtime_error("no community structure detected (k_hat = 0)");
  }
  CommunityAssignment out;
  out.method = "scdre";
  out.k_used = k;
  if (k == 1) {
    out.labels.assign(n, 1);
    return out;
  }
  const auto rm = ratio_matrix(leading_eigenspace(d, k), n, k);
  auto km = kmeans(rm.pi, k, opt.kmeans, seed);
  out.labels = std::move(km.labels);
  out.objective = km.objective;
  return out;
}

namespace {

CommunityAssignment cluster_rows(const Matrix& rows, int k,
                                 const KMeansConfig& cfg, std::uint64_t seed,
                                 const char* method) {
  CommunityAssignment out;
  out.method = method;
  out.k_used = k;
  if (k == 1) {
    out.labels.assign(static_cast<int>(rows.rows()), 1);
    return out;
  }
  auto km = kmeans(rows, k, cfg, seed);
  out.labels = std::move(km.labels);
  out.objective = km.objective;
  return out;
}

}  // namespace

CommunityAssignment opca(const Matrix& a, int k, const KMeansConfig& cfg,
                         std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return cluster_rows(leading_eigenspace(eig_sym(a), k), k, cfg, seed, "opca");
}

CommunityAssignment npca(const Matrix& a, int k, const KMeansConfig& cfg,
                         std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return cluster_rows(leading_eigenspace(eig_sym(normalized_laplacian(a)), k),
                      k, cfg, seed, "npca");
}

CommunityAssignment score(const Matrix& a, int k, const KMeansConfig& cfg,
                          std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int n = static_cast<int>(a.rows());
  CommunityAssignment out;
  out.method = "score";
  out.k_used = k;
  if (k == 1) {
    out.labels.assign(n, 1);
    return out;
  }
  const Matrix u = leading_eigenspace(eig_sym(a), k);
  const double clamp = std::log(static_cast<double>(n));
  Matrix ratios(n, k - 1);
  for (int i = 0; i < n; ++i) {
    const double denom = u(i, 0);
    for (int z = 1; z < k; ++z) {
      const double num = u(i, z);
      double v;
      if (denom == 0.0)
        v = num == 0.0 ? 0.0 : std::copysign(clamp, num);
      else
        v = std::clamp(num / denom, -clamp, clamp);
      ratios(i, z - 1) = v;
    }
  }
  auto km = kmeans(ratios, k, cfg, seed);
  out.labels = std::move(km.labels);
  out.objective = km.objective;
  return out;
}

CommunityAssignment detect(const Matrix& a, const std::string& method,
                           const DetectOptions& opt, std::uint64_t seed) {
  if (method == "scdre") return scdre(a, opt, seed);
  int k = opt.k;
  if (k <= 0) {
    const int n = static_cast<int>(a.rows());
    k = estimate_k(eig_sym(a), default_threshold(n, opt.delta)).k_hat;
    if (k == 0)
      throw std::runtime_error("no community structure detected (k_hat = 0)");
  }
  if (method == "opca") return opca(a, k, opt.kmeans, seed);
  if (method == "npca") return npca(a, k, opt.kmeans, seed);
  if (method == "score") return score(a, k, opt.kmeans, seed);
  throw std::invalid_argument("unknown method: " + method);
}

}  // namespace speccomm
