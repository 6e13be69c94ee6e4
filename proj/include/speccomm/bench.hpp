#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cluster.hpp"
#include "io.hpp"
#include "types.hpp"

namespace speccomm {

struct ExperimentReport {
  std::string method;           // "scdre"|"score"|"opca"|"npca"|"khat"
  std::vector<double> per_rep;  // successful repetitions only
  double mean = 0.0;            // NaN when every repetition was flagged
  double sd = 0.0;              // sample sd (divisor reps-1); 0 for one rep
  int reps = 0;                 // requested repetitions
  int flagged = 0;              // failed repetitions, excluded from mean
  std::uint64_t config_digest = 0;
  std::uint64_t base_seed = 0;
};

struct ExperimentTask {
  ModelConfig config;
  std::vector<std::string> methods;  // "khat" = estimator accuracy task
  int reps = 100;
  std::uint64_t base_seed = 1;
  double delta = 0.03;  // threshold scale for "khat"
  KMeansConfig kmeans;
};

// One report per method; repetition r uses seed base_seed + r for fresh
// membership, theta, and adjacency draws. Methods sharing the adjacency
// spectrum (scdre/opca/score) reuse one decomposition per repetition.
// Repetitions run in parallel subject to thread_count().
std::vector<ExperimentReport> run_experiment(const ExperimentTask& task);

// Built-in experiment presets.
ModelConfig exp1_config(int n, int k);         // DCBM, theta ~ U(0.15, 1)
ModelConfig exp2_config(int k);                // n=1000, theta = 0.2
ModelConfig exp3_config(int n, int k);         // DCBM, theta quadratic ramp
ModelConfig exp4_config(int variant);          // n=1000, K=3; 1=linear, 2=quadratic, 3=step
ModelConfig experiment_config(const std::string& name, int n, int k, int variant = 1);

}  // namespace speccomm
