#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "speccomm/bench.hpp"
#include "speccomm/checks.hpp"
#include "speccomm/cluster.hpp"
#include "speccomm/io.hpp"
#include "speccomm/kestimate.hpp"
#include "speccomm/metrics.hpp"
#include "speccomm/model.hpp"
#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"

namespace {

using namespace speccomm;

struct GraphOptions {
  std::string edges;
  int indexing = 0;
  std::string diag = "force_ones";
  bool lcc = false;
  int declared_n = 0;
};

void add_graph_options(CLI::App* cmd, GraphOptions& g) {
  cmd->add_option("--edges", g.edges, "edge list file (u v per line)")
      ->required();
  cmd->add_option("--indexing", g.indexing, "node index base in the file")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  cmd->add_option("--diag", g.diag, "diagonal policy")
      ->check(CLI::IsMember({std::string("force_ones"), std::string("keep")}))
      ->capture_default_str();
  cmd->add_flag("--lcc", g.lcc, "restrict to the largest connected component");
  cmd->add_option("--n", g.declared_n, "declared node count (default: max index + 1)")
      ->check(CLI::NonNegativeNumber);
}

Matrix load_graph(const GraphOptions& g) {
  Matrix a = read_edge_list(g.edges, g.indexing, g.diag == "force_ones",
                            g.declared_n);
  if (g.lcc) {
    auto [sub, kept] = largest_component(a);
    if (sub.rows() < a.rows())
      std::printf("largest component: %ld of %ld nodes kept\n",
                  static_cast<long>(sub.rows()), static_cast<long>(a.rows()));
    a = std::move(sub);
  }
  return a;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  return out;
}

int parse_k(const std::string& text) {
  if (text == "auto") return 0;
  try {
    std::size_t pos = 0;
    const int k = std::stoi(text, &pos);
    if (pos != text.size() || k < 1) throw std::invalid_argument("");
    return k;
  } catch (const std::exception&) {
    throw std::invalid_argument("--k must be 'auto' or a positive integer");
  }
}

int cmd_generate(const std::string& config_path, std::uint64_t seed,
                 const std::string& out_path, const std::string& labels_path,
                 int index_base) {
  const ModelConfig cfg = load_model_config(config_path);
  const ModelSpec spec = cfg.realize(seed);
  const Matrix a = generate(spec, derive_seed(seed, 0xAD7ULL));
  write_edge_list(a, out_path, index_base);
  if (!labels_path.empty()) {
    auto out = open_out(labels_path);
    for (int g : spec.membership) out << g << "\n";
  }
  long edges = 0;
  for (int i = 0; i < spec.n; ++i)
    for (int j = i + 1; j < spec.n; ++j)
      if (a(i, j) >= 0.5) ++edges;
  std::printf("n = %d  k = %d  model = %s  edges = %ld\n", spec.n, spec.k,
              to_string(spec.kind).c_str(), edges);
  std::printf("config digest = %016llx\n",
              static_cast<unsigned long long>(cfg.digest()));
  if (spec.kind == ModelKind::General)
    std::printf("note: real-valued entries thresholded at 0.5 for the edge list\n");
  return 0;
}

int cmd_detect(const GraphOptions& g, const std::string& method,
               const std::string& k_text, double delta, std::uint64_t seed,
               const std::string& out_path, const std::string& truth_path) {
  const Matrix a = load_graph(g);
  DetectOptions opt;
  opt.k = parse_k(k_text);
  opt.delta = delta;
  const CommunityAssignment res = detect(a, method, opt, seed);
  write_labels_csv(res.labels, out_path);
  std::printf("n = %ld  method = %s  k = %d%s\n", static_cast<long>(a.rows()),
              res.method.c_str(), res.k_used,
              opt.k == 0 ? " (estimated)" : "");
  if (!truth_path.empty()) {
    const LabelFile truth = read_labels(truth_path);
    if (truth.remapped)
      std::printf("warning: truth labels had gaps; remapped densely\n");
    if (static_cast<long>(truth.labels.size()) != a.rows())
      throw std::invalid_argument("truth label count != node count");
    const ErrorReport err = relative_error_rate(truth.labels, res.labels);
    const int wrong = static_cast<int>(
        std::lround(err.error_rate * static_cast<double>(a.rows())));
    std::printf("errors vs truth = %d/%ld  (rate %.6f)\n", wrong,
                static_cast<long>(a.rows()), err.error_rate);
  }
  return 0;
}

int cmd_estimate_k(const GraphOptions& g, double delta) {
  const Matrix a = load_graph(g);
  const int n = static_cast<int>(a.rows());
  const SpectralDecomposition d = eig_sym(a);
  const KEstimate est = estimate_k(d, default_threshold(n, delta));
  std::printf("k_hat = %d\n", est.k_hat);
  std::printf("threshold C_n = %.6f  (delta = %g, n = %d)\n", est.threshold,
              delta, n);
  std::printf("mean |eigenvalue| = %.6f\n", est.mean_abs_eigenvalue);
  const int show = std::min(n, std::max(10, est.k_hat + 5));
  std::printf("%-6s %-14s %-14s %s\n", "rank", "eigenvalue", "ratio", "above");
  for (int i = 0; i < show; ++i)
    std::printf("%-6d %-14.6f %-14.6f %s\n", i + 1, d.eigenvalues(i),
                est.ratios(i), est.ratios(i) > est.threshold ? "*" : "");
  return 0;
}

int cmd_sweep_k(const GraphOptions& g, double dmin, double dmax, double step,
                const std::string& out_path) {
  if (!(dmin > 0.0 && dmin < 1.0) || !(dmax > 0.0 && dmax < 1.0) ||
      dmin > dmax)
    throw std::invalid_argument("need 0 < delta-min <= delta-max < 1");
  if (step <= 0.0) throw std::invalid_argument("step must be positive");
  std::vector<double> deltas;
  const int count = static_cast<int>(std::floor((dmax - dmin) / step + 1e-9));
  for (int i = 0; i <= count; ++i) deltas.push_back(dmin + i * step);

  const Matrix a = load_graph(g);
  const auto rows = delta_sweep(eig_sym(a), static_cast<int>(a.rows()), deltas);
  std::string csv = "delta,k_hat\n";
  for (const auto& [delta, k_hat] : rows) {
    char line[64];
    std::snprintf(line, sizeof line, "%g,%d\n", delta, k_hat);
    csv += line;
  }
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    open_out(out_path) << csv;
    std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
  }
  return 0;
}

int cmd_benchmark(const std::string& experiment, int n, int k, int variant,
                  std::vector<std::string> methods, int reps,
                  std::uint64_t seed, double delta,
                  const std::string& out_path) {
  ExperimentTask task;
  task.config = experiment_config(experiment, n, k, variant);
  if (methods.empty())
    methods = experiment == "exp1"
                  ? std::vector<std::string>{"khat"}
                  : std::vector<std::string>{"scdre", "opca", "npca", "score"};
  task.methods = std::move(methods);
  task.reps = reps;
  task.base_seed = seed;
  task.delta = delta;
  const auto reports = run_experiment(task);

  auto out = open_out(out_path);
  out << "method,n,k,mean,sd,reps,flagged\n";
  std::printf("%-8s %-6s %-4s %-10s %-10s %-6s %s\n", "method", "n", "k",
              "mean", "sd", "reps", "flagged");
  for (const auto& r : reports) {
    char line[160];
    std::snprintf(line, sizeof line, "%s,%d,%d,%.6f,%.6f,%d,%d\n",
                  r.method.c_str(), task.config.n, task.config.k, r.mean, r.sd,
                  r.reps, r.flagged);
    out << line;
    std::printf("%-8s %-6d %-4d %-10.4f %-10.4f %-6d %d\n", r.method.c_str(),
                task.config.n, task.config.k, r.mean, r.sd, r.reps, r.flagged);
  }
  std::printf("config digest = %016llx\n",
              static_cast<unsigned long long>(task.config.digest()));
  return 0;
}

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

int cmd_verify(const std::string& check, const std::string& config_path,
               std::vector<int> sweep, int reps, std::uint64_t seed,
               const std::string& out_path) {
  const ModelConfig base = load_model_config(config_path);
  if (sweep.empty()) sweep.push_back(base.n);
  for (int n : sweep)
    if (n < 2) throw std::invalid_argument("sweep sizes must be >= 2");
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");

  std::string csv;
  bool pass = true;
  std::vector<double> trend;  // per-n medians for linf / separation

  for (int n : sweep) {
    ModelConfig cfg = base;
    cfg.n = n;
    std::vector<double> values, bounds;
    for (int r = 0; r < reps; ++r) {
      const std::uint64_t rep_seed = seed + static_cast<std::uint64_t>(r);
      const ModelSpec spec = cfg.realize(rep_seed);
      const std::uint64_t a_seed = derive_seed(rep_seed, 0xAD7ULL);
      char line[128];
      if (check == "transform") {
        const double v = eigen_transform_check(spec);
        values.push_back(v);
        if (v > 1e-8) pass = false;
        std::snprintf(line, sizeof line, "%d,%d,%.3e\n", n, r, v);
      } else if (check == "noise-norm") {
        const NoiseNormReport rep = noise_norm(generate(spec, a_seed), spec);
        values.push_back(rep.value);
        bounds.push_back(rep.bound);
        if (rep.value > rep.bound * 1.15) pass = false;
        std::snprintf(line, sizeof line, "%d,%d,%.6f,%.6f\n", n, r, rep.value,
                      rep.bound);
      } else if (check == "linf") {
        const LinfReport rep = linf_residual(generate(spec, a_seed), spec);
        values.push_back(rep.value * n / std::log(n));
        std::snprintf(line, sizeof line, "%d,%d,%.6f,%.6f\n", n, r, rep.value,
                      values.back());
      } else if (check == "separation") {
        const Matrix a = generate(spec, a_seed);
        const SeparationReport rep =
            row_separation(a, spec.membership, spec.k, rep_seed);
        values.push_back(rep.max_within * std::sqrt(n) / std::log(n));
        std::snprintf(line, sizeof line, "%d,%d,%.6f,%.6f,%.6f\n", n, r,
                      rep.max_within, rep.min_cross, values.back());
      } else if (check == "ratios") {
        const bool ok = population_ratio_check(spec);
        values.push_back(ok ? 1.0 : 0.0);
        if (!ok) pass = false;
        std::snprintf(line, sizeof line, "%d,%d,%d\n", n, r, ok ? 1 : 0);
      } else {
        throw std::invalid_argument("unknown check: " + check);
      }
      csv += line;
    }
    const double med = median_of(values);
    if (check == "linf" || check == "separation") trend.push_back(med);
    std::printf("n = %-6d median = %.6f", n, med);
    if (!bounds.empty())
      std::printf("  bound = %.6f", *std::min_element(bounds.begin(), bounds.end()));
    std::printf("\n");
  }

  if (trend.size() > 1 && !trend_ok(trend)) pass = false;

  if (!out_path.empty()) {
    static const char* headers[] = {"transform", "n,rep,value\n",
                                    "noise-norm", "n,rep,value,bound\n",
                                    "linf", "n,rep,value,normalized\n",
                                    "separation",
                                    "n,rep,max_within,min_cross,normalized\n",
                                    "ratios", "n,rep,pass\n"};
    auto out = open_out(out_path);
    for (int i = 0; i < 10; i += 2)
      if (check == headers[i]) out << headers[i + 1];
    out << csv;
  }
  std::printf("%s: %s\n", check.c_str(), pass ? "PASS" : "FAIL");
  if (!pass) throw std::runtime_error("check '" + check + "' failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral community detection toolkit"};
  app.require_subcommand(1);

  // generate
  std::string gen_config, gen_out, gen_labels;
  std::uint64_t gen_seed = 0;
  int gen_indexing = 0;
  auto* gen = app.add_subcommand("generate", "sample a graph from a model config");
  gen->add_option("--config", gen_config, "model config (TOML)")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "edge list output path")->required();
  gen->add_option("--labels-out", gen_labels,
                  "ground-truth labels, one per line");
  gen->add_option("--indexing", gen_indexing, "index base for the output")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();

  // detect
  GraphOptions det_graph;
  std::string det_method = "scdre", det_k = "auto", det_out, det_truth;
  double det_delta = 0.03;
  std::uint64_t det_seed = 0;
  auto* det = app.add_subcommand("detect", "cluster a graph into communities");
  add_graph_options(det, det_graph);
  det->add_option("--method", det_method, "clustering method")
      ->check(CLI::IsMember({std::string("scdre"), std::string("opca"),
                             std::string("npca"), std::string("score")}))
      ->capture_default_str();
  det->add_option("--k", det_k, "community count or 'auto'")
      ->capture_default_str();
  det->add_option("--delta", det_delta, "threshold scale for --k auto")
      ->capture_default_str();
  det->add_option("--seed", det_seed, "RNG seed (k-means)")->required();
  det->add_option("--out", det_out, "labels CSV output path")->required();
  det->add_option("--truth", det_truth, "ground-truth label file to score against");

  // estimate-k
  GraphOptions est_graph;
  double est_delta = 0.03;
  auto* est = app.add_subcommand("estimate-k", "estimate the community count");
  add_graph_options(est, est_graph);
  est->add_option("--delta", est_delta, "threshold scale")
      ->capture_default_str();

  // sweep-k
  GraphOptions swp_graph;
  double swp_min = 0.0, swp_max = 0.0, swp_step = 0.0;
  std::string swp_out;
  auto* swp = app.add_subcommand("sweep-k", "k_hat as a function of delta");
  add_graph_options(swp, swp_graph);
  swp->add_option("--delta-min", swp_min, "first delta")->required();
  swp->add_option("--delta-max", swp_max, "last delta")->required();
  swp->add_option("--step", swp_step, "delta increment")->required();
  swp->add_option("--out", swp_out, "CSV output path (default: stdout)");

  // benchmark
  std::string bm_exp, bm_out;
  int bm_n = 1000, bm_k = 2, bm_case = 1, bm_reps = 100;
  std::vector<std::string> bm_methods;
  std::uint64_t bm_seed = 0;
  double bm_delta = 0.03;
  auto* bm = app.add_subcommand("benchmark", "run a Monte-Carlo experiment");
  bm->add_option("--experiment", bm_exp, "experiment preset")
      ->check(CLI::IsMember({std::string("exp1"), std::string("exp2"),
                             std::string("exp3"), std::string("exp4")}))
      ->required();
  bm->add_option("--n", bm_n, "graph size (exp1/exp3)")->capture_default_str();
  bm->add_option("--k", bm_k, "community count (exp1/exp2/exp3)")
      ->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  bm->add_option("--case", bm_case, "theta profile for exp4")
      ->check(CLI::IsMember({1, 2, 3}))
      ->capture_default_str();
  bm->add_option("--methods", bm_methods,
                 "methods to run (default: experiment-specific)")
      ->delimiter(',');
  bm->add_option("--reps", bm_reps, "repetitions")->capture_default_str();
  bm->add_option("--seed", bm_seed, "base RNG seed")->required();
  bm->add_option("--delta", bm_delta, "threshold scale for khat")
      ->capture_default_str();
  bm->add_option("--out", bm_out, "report CSV path")->required();

  // verify
  std::string vf_check, vf_config, vf_out;
  std::vector<int> vf_sweep;
  int vf_reps = 20;
  std::uint64_t vf_seed = 0;
  auto* vf = app.add_subcommand("verify", "check a theoretical property numerically");
  vf->add_option("--check", vf_check, "property to check")
      ->check(CLI::IsMember({std::string("transform"), std::string("noise-norm"),
                             std::string("linf"), std::string("separation"),
                             std::string("ratios")}))
      ->required();
  vf->add_option("--config", vf_config, "model config (TOML)")->required();
  vf->add_option("--sweep", vf_sweep, "graph sizes to sweep (default: config n)")
      ->delimiter(',');
  vf->add_option("--reps", vf_reps, "repetitions per size")
      ->capture_default_str();
  vf->add_option("--seed", vf_seed, "base RNG seed")->required();
  vf->add_option("--out", vf_out, "per-repetition CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen)
      return cmd_generate(gen_config, gen_seed, gen_out, gen_labels,
                          gen_indexing);
    if (*det)
      return cmd_detect(det_graph, det_method, det_k, det_delta, det_seed,
                        det_out, det_truth);
    if (*est) return cmd_estimate_k(est_graph, est_delta);
    if (*swp) return cmd_sweep_k(swp_graph, swp_min, swp_max, swp_step, swp_out);
    if (*bm)
      return cmd_benchmark(bm_exp, bm_n, bm_k, bm_case, bm_methods, bm_reps,
                           bm_seed, bm_delta, bm_out);
    if (*vf)
      return cmd_verify(vf_check, vf_config, vf_sweep, vf_reps, vf_seed, vf_out);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
