// Acceptance gate: one PASS/FAIL line per criterion; exit code = number of
// failures. An optional argument ("c7") runs a single criterion.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <string>
#include <vector>

#include "karate.hpp"
#include "speccomm/bench.hpp"
#include "speccomm/checks.hpp"
#include "speccomm/cluster.hpp"
#include "speccomm/kestimate.hpp"
#include "speccomm/metrics.hpp"
#include "speccomm/model.hpp"
#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"

using namespace speccomm;

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Non-increasing across the sweep, allowing one adjacent rise of <= 10%.
bool trend_ok(const std::vector<double>& series) {
  int rises = 0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i] <= series[i - 1]) continue;
    if (series[i] > 1.10 * series[i - 1]) return false;
    if (++rises > 1) return false;
  }
  return true;
}

std::string fmt(const char* f, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentReport run_one(const ModelConfig& cfg, const std::string& method,
                         int reps, std::uint64_t seed) {
  ExperimentTask t;
  t.config = cfg;
  t.methods = {method};
  t.reps = reps;
  t.base_seed = seed;
  return run_experiment(t)[0];
}

// random spec with every label present; kind cycles with the trial index
ModelSpec random_spec(std::mt19937_64& eng, int trial, int k_min, int k_max) {
  const int n = 60 + static_cast<int>(uniform_index(eng, 140));
  const int k =
      k_min + static_cast<int>(uniform_index(eng, k_max - k_min + 1));
  Matrix p(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) p(i, j) = p(j, i) = 0.05 + 0.9 * uniform01(eng);
  const ModelKind kind = trial % 3 == 0   ? ModelKind::BM
                         : trial % 3 == 1 ? ModelKind::DCBM
                                          : ModelKind::General;
  const Vector theta = kind == ModelKind::BM
                           ? theta_constant(n, 1.0)
                           : theta_uniform(n, 0.2, 1.0, eng());
  Labels g(n);
  for (int i = 0; i < n; ++i)
    g[i] = 1 + static_cast<int>(i < k ? i : uniform_index(eng, k));
  return make_spec(n, k, std::move(g), std::move(p), theta, kind);
}

// 1. K-estimator accuracy on the exp1 grid
bool c1(std::string& note) {
  bool ok = true;
  for (int n : {400, 1000})
    for (int k : {2, 3}) {
      const auto rep =
          run_one(exp1_config(n, k), "khat", 100, 100000 + n * 10 + k);
      int correct = 0;
      for (double v : rep.per_rep)
        if (static_cast<int>(v) == k) ++correct;
      ok &= correct >= 99;
      note += " " + std::to_string(correct) + "/100";
    }
  return ok;
}

// 2. SCDRE error on the constant-theta block model (exp2)
bool c2(std::string& note) {
  const double m2 = run_one(exp2_config(2), "scdre", 100, 52001).mean;
  const double m3 = run_one(exp2_config(3), "scdre", 100, 52003).mean;
  note = fmt(" k2 %.4f", m2) + fmt("  k3 %.4f", m3);
  return m2 >= 0.031 && m2 <= 0.085 && m3 >= 0.0 && m3 <= 0.261;
}

// 3. SCDRE beats oPCA under degree heterogeneity (exp3)
bool c3(std::string& note) {
  ExperimentTask t;
  t.config = exp3_config(1000, 2);
  t.methods = {"scdre", "opca"};
  t.reps = 100;
  t.base_seed = 53001;
  const auto reps = run_experiment(t);
  note = fmt(" scdre %.4f", reps[0].mean) + fmt("  opca %.4f", reps[1].mean);
  return reps[0].mean >= 0.049 && reps[0].mean <= 0.097 &&
         reps[1].mean >= 0.2;
}

// 4. Heterogeneity stress cases (exp4, cases 1 and 3)
bool c4(std::string& note) {
  const double m1 = run_one(exp4_config(1), "scdre", 100, 54001).mean;
  const double m3 = run_one(exp4_config(3), "scdre", 100, 54003).mean;
  note = fmt(" case1 %.4f", m1) + fmt("  case3 %.4f", m3);
  return m1 >= 0.006 && m1 <= 0.036 && m3 >= 0.12 && m3 <= 0.19;
}

// 5. Eigenvalue transform identity on random specs
bool c5(std::string& note) {
  auto eng = make_engine(505);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t)
    worst = std::max(worst, eigen_transform_check(random_spec(eng, t, 1, 5)));
  note = fmt(" worst %.2e", worst);
  return worst <= 1e-8;
}

// 6. Zero-noise identities: population fed as the sample
bool c6(std::string& note) {
  Labels g(300);
  for (int i = 0; i < 300; ++i) g[i] = 1 + i % 2;
  Matrix pb(2, 2);
  pb << 1.0, 0.5, 0.5, 1.0;
  const ModelSpec bm = make_spec(300, 2, g, pb, theta_constant(300, 1.0),
                                 ModelKind::BM);
  const ModelSpec dcbm = exp1_config(400, 2).realize(61);
  ModelSpec gen = exp1_config(400, 3).realize(62);
  gen.kind = ModelKind::General;

  double worst_linf = 0.0, worst_within = 0.0, worst_cross_dev = 0.0;
  for (const ModelSpec& spec : {bm, dcbm, gen}) {
    const Matrix pop = population(spec).expected_adjacency;
    const SpectralDecomposition d = eig_sym(pop);
    worst_linf = std::max(worst_linf, linf_residual(d, spec).value);
    const auto sep = row_separation(d, spec.membership, spec.k);
    worst_within = std::max(worst_within, sep.max_within);
    worst_cross_dev = std::max(worst_cross_dev,
                               std::abs(sep.min_cross - std::sqrt(2.0)));
  }
  note = fmt(" linf %.1e", worst_linf) + fmt(" within %.1e", worst_within) +
         fmt(" cross-dev %.1e", worst_cross_dev);
  return worst_linf <= 1e-8 && worst_within <= 1e-8 && worst_cross_dev <= 1e-8;
}

// 7. Rate trends over the n-sweep (normalized medians non-increasing)
bool c7(std::string& note) {
  const std::vector<int> sizes = {250, 500, 1000, 2000};
  std::vector<double> linf_med, sep_med;
  for (int n : sizes) {
    const ModelConfig cfg = exp1_config(n, 2);
    std::vector<double> lv, sv;
    for (std::uint64_t r = 0; r < 20; ++r) {
      const std::uint64_t seed = 7000 + r;
      const ModelSpec spec = cfg.realize(seed);
      const Matrix a = generate(spec, derive_seed(seed, 0xAD7ULL));
      const SpectralDecomposition d = eig_sym(a);
      lv.push_back(linf_residual(d, spec).normalized);
      sv.push_back(row_separation(d, spec.membership, 2, seed).max_within *
                   std::sqrt(double(n)) / std::log(double(n)));
    }
    linf_med.push_back(median_of(lv));
    sep_med.push_back(median_of(sv));
  }
  for (std::size_t i = 0; i < sizes.size(); ++i)
    note += fmt(" %.3f", linf_med[i]) + fmt("/%.3f", sep_med[i]);
  return trend_ok(linf_med) && trend_ok(sep_med);
}

// 8. Noise-norm bound on 50 seeds per model
bool c8(std::string& note) {
  Labels g(1000, 1);
  Matrix p(1, 1);
  p << 0.5;
  const ModelSpec bm =
      make_spec(1000, 1, g, p, theta_constant(1000, 1.0), ModelKind::BM);
  const ModelConfig cfg3 = exp3_config(1000, 2);

  double worst_ratio = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rb = noise_norm(generate(bm, 800000 + s), bm);
    worst_ratio = std::max(worst_ratio, rb.value / rb.bound);
    const ModelSpec s3 = cfg3.realize(810000 + s);
    const auto r3 =
        noise_norm(generate(s3, derive_seed(810000 + s, 0xAD7ULL)), s3);
    worst_ratio = std::max(worst_ratio, r3.value / r3.bound);
  }
  note = fmt(" worst value/bound %.4f", worst_ratio);
  return worst_ratio <= 1.15;
}

// 9. Assignment path equals brute-force permutation minimum, exactly
bool c9(std::string& note) {
  auto eng = make_engine(909);
  int agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int kt = 1 + static_cast<int>(uniform_index(eng, 6));
    const int ke = 1 + static_cast<int>(uniform_index(eng, 6));
    const int n = 30;
    Labels truth(n), est(n);
    for (int i = 0; i < n; ++i) {
      truth[i] = 1 + static_cast<int>(i < kt ? i : uniform_index(eng, kt));
      est[i] = 1 + static_cast<int>(i < ke ? i : uniform_index(eng, ke));
    }
    const auto rep = relative_error_rate(est, truth);  // brute for k <= 8

    const auto assign = max_assignment(rep.confusion);
    long matched = 0;
    for (int t = 0; t < rep.confusion.rows(); ++t)
      if (assign[t] >= 0) matched += rep.confusion(t, assign[t]);
    if (rep.error_rate == double(n - matched) / n) ++agree;
  }
  note = " " + std::to_string(agree) + "/1000 exact";
  return agree == 1000;
}

// 10. Karate club: 0/34 with the published factions
bool c10(std::string& note) {
  DetectOptions opt;
  opt.k = 2;
  const auto res = scdre(karate::adjacency(), opt, 7);
  const auto rep = relative_error_rate(res.labels, karate::truth());
  const int wrong =
      static_cast<int>(std::lround(rep.error_rate * 34.0));
  note = " " + std::to_string(wrong) + "/34 wrong";
  return wrong == 0;
}

// 11. Population distinguishability on experiment + random specs
bool c11(std::string& note) {
  int checked = 0, passed = 0;
  auto probe = [&](const ModelSpec& spec) {
    ++checked;
    if (population_ratio_check(spec)) ++passed;
  };
  for (int n : {400, 1000})
    for (int k : {2, 3}) probe(exp1_config(n, k).realize(111));
  for (int k : {2, 3}) probe(exp2_config(k).realize(111));
  for (int k : {2, 3}) probe(exp3_config(1000, k).realize(111));
  for (int v : {1, 2, 3}) probe(exp4_config(v).realize(111));
  auto eng = make_engine(1111);
  for (int t = 0; t < 50; ++t) probe(random_spec(eng, t, 2, 5));
  note = " " + std::to_string(passed) + "/" + std::to_string(checked);
  return passed == checked;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    const char* id;
    const char* name;
    bool (*fn)(std::string&);
  };
  const Criterion table[] = {
      {"c1", "K-estimator accuracy (exp1 grid)", c1},
      {"c2", "SCDRE on BM (exp2)", c2},
      {"c3", "SCDRE vs oPCA on DCBM (exp3)", c3},
      {"c4", "heterogeneity stress (exp4)", c4},
      {"c5", "eigenvalue transform identity", c5},
      {"c6", "zero-noise identities", c6},
      {"c7", "rate trends over the n-sweep", c7},
      {"c8", "noise-norm bound", c8},
      {"c9", "metric assignment oracle", c9},
      {"c10", "karate club 0/34", c10},
      {"c11", "population distinguishability", c11},
  };

  int failures = 0, ran = 0;
  for (const auto& c : table) {
    if (argc > 1 && std::strcmp(argv[1], c.id) != 0) continue;
    ++ran;
    std::string note;
    const bool ok = c.fn(note);
    if (!ok) ++failures;
    std::printf("%-4s %-40s %s %s\n", c.id, c.name, ok ? "PASS" : "FAIL",
                note.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::printf("unknown criterion: %s\n", argv[1]);
    return 1;
  }
  std::printf("acceptance: %d/%d passed\n", ran - failures, ran);
  return failures;
}
