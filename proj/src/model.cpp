#include "speccomm/model.hpp"

#include <cmath>
#include <stdexcept>

#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"

namespace speccomm {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::BM: return "bm";
    case ModelKind::DCBM: return "dcbm";
    case ModelKind::General: return "general";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "bm") return ModelKind::BM;
  if (s == "dcbm") return ModelKind::DCBM;
  if (s == "general") return ModelKind::General;
  throw std::invalid_argument("unknown model kind: " + s);
}

void ModelSpec::validate() const {
  if (n <= 0) throw std::invalid_argument("n must be positive");
  if (k <= 0 || k > n) throw std::invalid_argument("k must be in 1..n");
  if (static_cast<int>(membership.size()) != n)
    throw std::invalid_argument("membership length != n");
  if (p.rows() != k || p.cols() != k)
    throw std::invalid_argument("p must be k x k");
  if (theta.size() != n) throw std::invalid_argument("theta length != n");

  std::vector<bool> seen(k, false);
  for (int g : membership) {
    if (g < 1 || g > k)
      throw std::invalid_argument("membership entry outside 1..k");
    seen[g - 1] = true;
  }
  for (int c = 0; c < k; ++c)
    if (!seen[c])
      throw std::invalid_argument("community " + std::to_string(c + 1) +
                                  " is empty");

  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (p(a, b) != p(b, a)) throw std::invalid_argument("p not symmetric");
      if (p(a, b) < 0.0 || p(a, b) > 1.0)
        throw std::invalid_argument("p entries must lie in [0,1]");
    }

  for (int i = 0; i < n; ++i) {
    const double t = theta(i);
    switch (kind) {
      case ModelKind::BM:
        if (t != 1.0)
          throw std::invalid_argument("BM requires theta = 1 everywhere");
        break;
      case ModelKind::DCBM:
        if (!(t > 0.0 && t < 1.0))
          throw std::invalid_argument("DCBM requires 0 < theta < 1");
        break;
      case ModelKind::General:
        if (!(t > 0.0))
          throw std::invalid_argument("General model requires theta > 0");
        break;
    }
  }

  if (kind == ModelKind::DCBM) {
    // theta(i) theta(j) p(gi,gj) is a probability; with p in [0,1] it
    // suffices to check the largest theta product per block pair.
    Vector tmax = Vector::Zero(k);
    for (int i = 0; i < n; ++i)
      tmax(membership[i] - 1) = std::max(tmax(membership[i] - 1), theta(i));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (tmax(a) * tmax(b) * p(a, b) > 1.0)
          throw std::invalid_argument("DCBM edge probability exceeds 1");
  }
  if (kind == ModelKind::General && !(noise.spread >= 0.0))
    throw std::invalid_argument("noise spread must be non-negative");
}

ModelSpec make_spec(int n, int k, Labels membership, Matrix p, Vector theta,
                    ModelKind kind, NoiseSpec noise) {
  ModelSpec spec;
  spec.n = n;
  spec.k = k;
  spec.membership = std::move(membership);
  spec.p = std::move(p);
  if (theta.size() == 0 && kind == ModelKind::BM)
    theta = Vector::Ones(n);
  spec.theta = std::move(theta);
  spec.kind = kind;
  spec.noise = noise;
  spec.validate();
  return spec;
}

Matrix generate(const ModelSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int n = spec.n;
  auto eng = make_engine(seed);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    const int gi = spec.membership[i] - 1;
    for (int j = i + 1; j < n; ++j) {
      const double mean =
          spec.theta(i) * spec.theta(j) * spec.p(gi, spec.membership[j] - 1);
      double v;
      if (spec.kind == ModelKind::General) {
        if (spec.noise.kind == NoiseSpec::Kind::Gaussian)
          v = mean + spec.noise.spread * gaussian(eng);
        else
          v = mean + (uniform01(eng) < 0.5 ? -spec.noise.spread
                                           : spec.noise.spread);
      } else {
        v = uniform01(eng) < mean ? 1.0 : 0.0;
      }
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

namespace {

// Community sizes (BM) or theta mass per community (DCBM/General).
struct CommunityWeights {
  Vector weights;  // alpha or beta
  Vector norms;    // sqrt(n_k) or ||theta_k||
  double scale;
};

CommunityWeights community_weights(const ModelSpec& spec) {
  CommunityWeights w;
  w.weights = Vector::Zero(spec.k);
  if (spec.kind == ModelKind::BM) {
    for (int g : spec.membership) w.weights(g - 1) += 1.0;
    w.scale = spec.n;
  } else {
    for (int i = 0; i < spec.n; ++i)
      w.weights(spec.membership[i] - 1) += spec.theta(i) * spec.theta(i);
    w.scale = spec.theta.squaredNorm();
  }
  w.norms = w.weights.cwiseSqrt();
  w.weights /= w.scale;
  return w;
}

}  // namespace

PopulationMatrices population(const ModelSpec& spec) {
  spec.validate();
  PopulationMatrices pop;
  const auto w = community_weights(spec);
  pop.scale = w.scale;
  pop.weights = w.weights;
  pop.reduced = Matrix(spec.k, spec.k);
  for (int a = 0; a < spec.k; ++a)
    for (int b = 0; b < spec.k; ++b)
      pop.reduced(a, b) =
          spec.p(a, b) * std::sqrt(pop.weights(a) * pop.weights(b));

  pop.expected_adjacency = Matrix(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j)
      pop.expected_adjacency(i, j) =
          spec.theta(i) * spec.theta(j) *
          spec.p(spec.membership[i] - 1, spec.membership[j] - 1);
  return pop;
}

PopulationEigens population_eigens(const ModelSpec& spec) {
  spec.validate();
  const auto w = community_weights(spec);
  Matrix reduced(spec.k, spec.k);
  for (int a = 0; a < spec.k; ++a)
    for (int b = 0; b < spec.k; ++b)
      reduced(a, b) = spec.p(a, b) * std::sqrt(w.weights(a) * w.weights(b));

  const auto d = eig_sym(reduced);
  PopulationEigens out;
  out.reduced_values = d.eigenvalues;
  out.reduced_vectors = d.eigenvectors;
  out.values = w.scale * d.eigenvalues;

  // q_i = sum_k v*(k, i) f_k, where f_k is the indicator (BM) or theta
  // (DCBM/General) profile of community k, unit-normalized.
  out.vectors = Matrix::Zero(spec.n, spec.k);
  for (int i = 0; i < spec.n; ++i) {
    const int g = spec.membership[i] - 1;
    const double f =
        (spec.kind == ModelKind::BM ? 1.0 : spec.theta(i)) / w.norms(g);
    for (int c = 0; c < spec.k; ++c)
      out.vectors(i, c) = f * d.eigenvectors(g, c);
  }
  // Columns are unit vectors already; apply the canonical sign so they match
  // eig_sym output conventions.
  for (int c = 0; c < spec.k; ++c) {
    int arg = 0;
    for (int i = 1; i < spec.n; ++i)
      if (std::abs(out.vectors(i, c)) > std::abs(out.vectors(arg, c))) arg = i;
    if (out.vectors(arg, c) < 0.0) out.vectors.col(c) = -out.vectors.col(c);
  }
  return out;
}

double max_offdiag_sd(const ModelSpec& spec) {
  if (spec.kind == ModelKind::General) return spec.noise.sd();
  // Bernoulli(p) sd is sqrt(p(1-p)); scan distinct block/theta combinations.
  double best = 0.0;
  for (int i = 0; i < spec.n; ++i)
    for (int j = i + 1; j < spec.n; ++j) {
      const double p = spec.theta(i) * spec.theta(j) *
                       spec.p(spec.membership[i] - 1, spec.membership[j] - 1);
      best = std::max(best, p * (1.0 - p));
    }
  return std::sqrt(best);
}

Vector theta_constant(int n, double c) { return Vector::Constant(n, c); }

Vector theta_uniform(int n, double a, double b, std::uint64_t seed) {
  auto eng = make_engine(seed);
  Vector t(n);
  for (int i = 0; i < n; ++i) t(i) = uniform_in(eng, a, b);
  return t;
}

Vector theta_power(int n, double c0, double d0, double exponent) {
  Vector t(n);
  for (int i = 1; i <= n; ++i)
    t(i - 1) = c0 + (d0 - c0) * std::pow(static_cast<double>(i) / n, exponent);
  return t;
}

Vector theta_step(int n, double c0, double d0) {
  Vector t(n);
  for (int i = 1; i <= n; ++i) t(i - 1) = (2 * i <= n) ? c0 : d0;
  return t;
}

Labels sample_membership(int n, int k, std::uint64_t seed) {
  if (k > n) throw std::invalid_argument("k must not exceed n");
  auto eng = make_engine(seed);
  Labels g(n);
  for (;;) {
    std::vector<bool> seen(k, false);
    for (int i = 0; i < n; ++i) {
      g[i] = static_cast<int>(uniform_index(eng, k)) + 1;
      seen[g[i] - 1] = true;
    }
    bool all = true;
    for (bool s : seen) all = all && s;
    if (all) return g;
  }
}

}  // namespace speccomm
