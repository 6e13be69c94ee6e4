#pragma once

#include <cstdint>
#include <string>

#include "types.hpp"

namespace speccomm {

enum class ModelKind { BM, DCBM, General };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

// Noise distribution for the General model; entry = mean + noise, where the
// noise has mean zero. Both built-ins have light tails (finite fourth
// moment well under control).
struct NoiseSpec {
  enum class Kind { Gaussian, TwoPoint };
  Kind kind = Kind::Gaussian;
  // Gaussian: params[0] = sd (default 0.5).
  // TwoPoint: +/- params[0] with probability 1/2 each (shifted/scaled
  // Bernoulli; sd = params[0]).
  double spread = 0.5;

  double sd() const { return spread; }
};

struct ModelSpec {
  int n = 0;
  int k = 0;
  Labels membership;  // length n, entries in 1..k, every label present
  Matrix p;           // k x k symmetric, entries in [0,1]
  Vector theta;       // length n; all ones under BM
  ModelKind kind = ModelKind::BM;
  NoiseSpec noise;    // used only when kind == General

  // Throws std::invalid_argument with a description on any violation.
  void validate() const;
};

ModelSpec make_spec(int n, int k, Labels membership, Matrix p, Vector theta,
                    ModelKind kind, NoiseSpec noise = {});

struct PopulationMatrices {
  Matrix expected_adjacency;  // rank-K expansion; no diagonal adjustment
  Matrix reduced;             // K x K
  Vector weights;             // alpha_k (BM) or beta_k (DCBM/General)
  double scale = 0.0;         // n (BM) or ||theta||^2 (DCBM/General)
};

// Leading-K population eigenpairs computed through the reduced matrix
// (O(K^3 + nK) instead of an n x n decomposition).
struct PopulationEigens {
  Vector values;           // K entries, |.| descending, positive first on ties
  Matrix vectors;          // n x K, unit columns, canonical sign
  Vector reduced_values;   // eigenvalues of the reduced matrix, same order
  Matrix reduced_vectors;  // K x K, columns matched to reduced_values
};

Matrix generate(const ModelSpec& spec, std::uint64_t seed);
PopulationMatrices population(const ModelSpec& spec);
PopulationEigens population_eigens(const ModelSpec& spec);

// Per-entry standard deviation bound of A - E(A) over off-diagonal entries.
double max_offdiag_sd(const ModelSpec& spec);

Vector theta_constant(int n, double c);
Vector theta_uniform(int n, double a, double b, std::uint64_t seed);
Vector theta_power(int n, double c0, double d0, double exponent);
Vector theta_step(int n, double c0, double d0);

// Uniform labels in 1..k, resampled until every community is non-empty.
Labels sample_membership(int n, int k, std::uint64_t seed);

}  // namespace speccomm
