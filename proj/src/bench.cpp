#include "speccomm/bench.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "speccomm/kestimate.hpp"
#include "speccomm/metrics.hpp"
#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"
#include "speccomm/threads.hpp"

namespace speccomm {

namespace {

Matrix preset_p(int k) {
  if (k == 2) {
    Matrix p(2, 2);
    p << 1.0, 0.5, 0.5, 1.0;
    return p;
  }
  if (k == 3) {
    Matrix p(3, 3);
    p << 1.0, 0.5, 0.04, 0.5, 1.0, 0.04, 0.04, 0.04, 1.0;
    return p;
  }
  throw std::invalid_argument("experiment presets support k = 2 or 3");
}

}  // namespace

ModelConfig exp1_config(int n, int k) {
  ModelConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.p = preset_p(k);
  cfg.kind = ModelKind::DCBM;
  cfg.theta = {ThetaSpec::Kind::Uniform, {0.15, 1.0}};
  return cfg;
}

ModelConfig exp2_config(int k) {
  ModelConfig cfg;
  cfg.n = 1000;
  cfg.k = k;
  cfg.p = preset_p(k);
  cfg.kind = ModelKind::DCBM;
  cfg.theta = {ThetaSpec::Kind::Constant, {0.2}};
  return cfg;
}

ModelConfig exp3_config(int n, int k) {
  ModelConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.p = preset_p(k);
  cfg.kind = ModelKind::DCBM;
  cfg.theta = {ThetaSpec::Kind::Power, {0.015, 0.8, 2.0}};
  return cfg;
}

ModelConfig exp4_config(int variant) {
  ModelConfig cfg;
  cfg.n = 1000;
  cfg.k = 3;
  cfg.p = preset_p(3);
  cfg.kind = ModelKind::DCBM;
  switch (variant) {
    case 1: cfg.theta = {ThetaSpec::Kind::Power, {0.015, 0.8, 1.0}}; break;
    case 2: cfg.theta = {ThetaSpec::Kind::Power, {0.015, 0.8, 2.0}}; break;
    case 3: cfg.theta = {ThetaSpec::Kind::Step, {0.015, 0.8}}; break;
    default:
      throw std::invalid_argument("exp4 variant must be 1, 2, or 3");
  }
  return cfg;
}

ModelConfig experiment_config(const std::string& name, int n, int k,
                              int variant) {
  if (name == "exp1") return exp1_config(n, k);
  if (name == "exp2") return exp2_config(k);
  if (name == "exp3") return exp3_config(n, k);
  if (name == "exp4") return exp4_config(variant);
  throw std::invalid_argument("unknown experiment: " + name);
}

std::vector<ExperimentReport> run_experiment(const ExperimentTask& task) {
  if (task.reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (task.methods.empty()) throw std::invalid_argument("no methods given");
  for (const auto& m : task.methods)
    if (m != "khat" && m != "scdre" && m != "opca" && m != "npca" &&
        m != "score")
      throw std::invalid_argument("unknown method: " + m);

  const int n_methods = static_cast<int>(task.methods.size());
  // value(rep, method); NaN marks a flagged repetition.
  std::vector<std::vector<double>> values(
      task.reps, std::vector<double>(n_methods,
                                     std::numeric_limits<double>::quiet_NaN()));

  parallel_for(task.reps, [&](int r) {
    const std::uint64_t rep_seed = task.base_seed + static_cast<std::uint64_t>(r);
    const ModelSpec spec = task.config.realize(rep_seed);
    const Matrix a = generate(spec, derive_seed(rep_seed, 0xAD7ULL));

    // scdre/opca/score/khat share A's decomposition; npca decomposes the
    // normalized Laplacian on demand.
    SpectralDecomposition adj_eig;
    bool have_adj_eig = false;
    auto adj = [&]() -> const SpectralDecomposition& {
      if (!have_adj_eig) {
        adj_eig = eig_sym(a);
        have_adj_eig = true;
      }
      return adj_eig;
    };

    for (int mi = 0; mi < n_methods; ++mi) {
      const std::string& method = task.methods[mi];
      try {
        if (method == "khat") {
          values[r][mi] = estimate_k(adj(), default_threshold(spec.n, task.delta)).k_hat;
          continue;
        }
        const std::uint64_t mseed = derive_seed(rep_seed, 0xC1u + mi);
        CommunityAssignment got;
        if (method == "scdre") {
          const auto rm =
              ratio_matrix(leading_eigenspace(adj(), spec.k), spec.n, spec.k);
          auto km = kmeans(rm.pi, spec.k, task.kmeans, mseed);
          got.labels = std::move(km.labels);
        } else if (method == "opca") {
          auto km = kmeans(leading_eigenspace(adj(), spec.k), spec.k,
                           task.kmeans, mseed);
          got.labels = std::move(km.labels);
        } else if (method == "npca") {
          got = npca(a, spec.k, task.kmeans, mseed);
        } else {  // score
          got = score(a, spec.k, task.kmeans, mseed);
        }
        values[r][mi] =
            relative_error_rate(got.labels, spec.membership).error_rate;
      } catch (const std::exception&) {
        // flagged; stays NaN
      }
    }
  });

  std::vector<ExperimentReport> reports(n_methods);
  for (int mi = 0; mi < n_methods; ++mi) {
    ExperimentReport& rep = reports[mi];
    rep.method = task.methods[mi];
    rep.reps = task.reps;
    rep.base_seed = task.base_seed;
    rep.config_digest = task.config.digest();
    for (int r = 0; r < task.reps; ++r) {
      if (std::isnan(values[r][mi]))
        ++rep.flagged;
      else
        rep.per_rep.push_back(values[r][mi]);
    }
    const int m = static_cast<int>(rep.per_rep.size());
    if (m == 0) {
      rep.mean = rep.sd = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double sum = 0.0;
    for (double v : rep.per_rep) sum += v;
    rep.mean = sum / m;
    double ss = 0.0;
    for (double v : rep.per_rep) ss += (v - rep.mean) * (v - rep.mean);
    rep.sd = m > 1 ? std::sqrt(ss / (m - 1)) : 0.0;
  }
  return reports;
}

}  // namespace speccomm
