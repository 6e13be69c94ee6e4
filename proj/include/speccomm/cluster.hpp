#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "types.hpp"

namespace speccomm {

struct KMeansConfig {
  int restarts = 20;
  int max_iters = 300;
  double tol = 1e-8;  // relative objective change
};

struct KMeansResult {
  Labels labels;  // 1..k
  double objective = 0.0;
};

// Lloyd's algorithm with k-means++ seeding; best of cfg.restarts runs.
// Empty clusters are re-seeded with the point farthest from its centroid.
// history, when given, receives the objective after each assignment step of
// the winning restart (non-increasing).
KMeansResult kmeans(const Matrix& points, int k, const KMeansConfig& cfg,
                    std::uint64_t seed, std::vector<double>* history = nullptr);

struct RatioMatrix {
  Matrix pi;       // n x k truncated ratio rows
  Vector cutoffs;  // CO_i = (sum_z |eta_z(i)|) / (k sqrt(n) ln n)
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> truncation_mask;
};

// Rows pi(i,.) = u(i,.) / ||u(i,.)||, entries with |u(i,z)| <= CO_i zeroed
// (no renormalization afterwards). All-zero rows stay zero, fully masked.
RatioMatrix ratio_matrix(const Matrix& u, int n, int k);

struct CommunityAssignment {
  Labels labels;
  int k_used = 0;
  std::string method;
  double objective = 0.0;
};

struct DetectOptions {
  int k = 0;           // 0 = estimate from the spectrum
  double delta = 0.03; // threshold scale for the estimate
  KMeansConfig kmeans;
};

CommunityAssignment scdre(const Matrix& a, const DetectOptions& opt,
                          std::uint64_t seed);
CommunityAssignment opca(const Matrix& a, int k, const KMeansConfig& cfg,
                         std::uint64_t seed);
CommunityAssignment npca(const Matrix& a, int k, const KMeansConfig& cfg,
                         std::uint64_t seed);
CommunityAssignment score(const Matrix& a, int k, const KMeansConfig& cfg,
                          std::uint64_t seed);

// Dispatch by method name ("scdre" resolves k per opt; the rest require
// opt.k > 0 or resolve it from A's spectrum first).
CommunityAssignment detect(const Matrix& a, const std::string& method,
                           const DetectOptions& opt, std::uint64_t seed);

}  // namespace speccomm
