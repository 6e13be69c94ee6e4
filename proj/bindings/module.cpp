#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "speccomm/bench.hpp"
#include "speccomm/checks.hpp"
#include "speccomm/cluster.hpp"
#include "speccomm/io.hpp"
#include "speccomm/kestimate.hpp"
#include "speccomm/metrics.hpp"
#include "speccomm/model.hpp"
#include "speccomm/rng.hpp"
#include "speccomm/spectral.hpp"

namespace py = pybind11;
using namespace speccomm;

PYBIND11_MODULE(_speccomm, m) {
  m.doc() = "spectral community detection core";

  py::class_<KEstimate>(m, "KEstimate")
      .def_readonly("k_hat", &KEstimate::k_hat)
      .def_readonly("threshold", &KEstimate::threshold)
      .def_readonly("mean_abs_eigenvalue", &KEstimate::mean_abs_eigenvalue)
      .def_readonly("ratios", &KEstimate::ratios)
      .def("__repr__", [](const KEstimate& e) {
        return "KEstimate(k_hat=" + std::to_string(e.k_hat) + ")";
      });

  py::class_<CommunityAssignment>(m, "CommunityAssignment")
      .def_readonly("labels", &CommunityAssignment::labels)
      .def_readonly("k_used", &CommunityAssignment::k_used)
      .def_readonly("method", &CommunityAssignment::method)
      .def_readonly("objective", &CommunityAssignment::objective)
      .def("__repr__", [](const CommunityAssignment& c) {
        return "CommunityAssignment(method=" + c.method +
               ", k_used=" + std::to_string(c.k_used) + ")";
      });

  py::class_<ErrorReport>(m, "ErrorReport")
      .def_readonly("error_rate", &ErrorReport::error_rate)
      .def_readonly("best_permutation", &ErrorReport::best_permutation)
      .def_readonly("confusion", &ErrorReport::confusion)
      .def("__repr__", [](const ErrorReport& r) {
        return "ErrorReport(error_rate=" + std::to_string(r.error_rate) + ")";
      });

  m.def(
      "generate",
      [](const std::string& config, std::uint64_t seed) {
        const ModelConfig cfg = parse_model_config(config);
        const ModelSpec spec = cfg.realize(seed);
        py::dict out;
        out["adjacency"] = generate(spec, derive_seed(seed, 0xAD7ULL));
        out["labels"] = spec.membership;
        out["theta"] = spec.theta;
        out["digest"] = cfg.digest();
        return out;
      },
      py::arg("config"), py::arg("seed"),
      "Sample a graph from a TOML model config; returns adjacency, "
      "ground-truth labels, theta, and the config digest.");

  m.def(
      "population",
      [](const std::string& config, std::uint64_t seed) {
        const ModelConfig cfg = parse_model_config(config);
        const ModelSpec spec = cfg.realize(seed);
        const PopulationMatrices pop = population(spec);
        const PopulationEigens eig = population_eigens(spec);
        py::dict out;
        out["expected_adjacency"] = pop.expected_adjacency;
        out["eigenvalues"] = eig.values;
        out["eigenvectors"] = eig.vectors;
        out["scale"] = pop.scale;
        return out;
      },
      py::arg("config"), py::arg("seed"),
      "Population (noise-free) matrices and leading-K eigenpairs.");

  m.def(
      "eig_sym",
      [](const Matrix& a) {
        const SpectralDecomposition d = eig_sym(a);
        return py::make_tuple(d.eigenvalues, d.eigenvectors);
      },
      py::arg("a"),
      "Full symmetric eigendecomposition; |value|-descending, canonical "
      "signs.");

  m.def(
      "estimate_k",
      [](const Matrix& a, double delta) {
        const int n = static_cast<int>(a.rows());
        return estimate_k(eig_sym(a), default_threshold(n, delta));
      },
      py::arg("a"), py::arg("delta") = 0.03,
      "Eigenvalue-ratio estimate of the community count.");

  m.def(
      "delta_sweep",
      [](const Matrix& a, const std::vector<double>& deltas) {
        return delta_sweep(eig_sym(a), static_cast<int>(a.rows()), deltas);
      },
      py::arg("a"), py::arg("deltas"),
      "k_hat for each delta; non-increasing in delta.");

  m.def(
      "detect",
      [](const Matrix& a, const std::string& method, int k, double delta,
         std::uint64_t seed) {
        DetectOptions opt;
        opt.k = k;
        opt.delta = delta;
        return detect(a, method, opt, seed);
      },
      py::arg("a"), py::arg("method") = "scdre", py::arg("k") = 0,
      py::arg("delta") = 0.03, py::arg("seed") = 1,
      "Cluster a graph; k = 0 estimates the community count first.");

  m.def("relative_error_rate", &relative_error_rate, py::arg("estimated"),
        py::arg("truth"),
        "Misclassification fraction under the best label matching.");

  m.def("default_threshold", &default_threshold, py::arg("n"),
        py::arg("delta"), "C_n = delta * n^(3/4).");

  m.def("sample_membership", &sample_membership, py::arg("n"), py::arg("k"),
        py::arg("seed"), "Uniform labels 1..k, every community non-empty.");
  m.def("theta_constant", &theta_constant, py::arg("n"), py::arg("c"));
  m.def("theta_uniform", &theta_uniform, py::arg("n"), py::arg("a"),
        py::arg("b"), py::arg("seed"));
  m.def("theta_power", &theta_power, py::arg("n"), py::arg("c0"),
        py::arg("d0"), py::arg("exponent"));

  m.def("read_edge_list", &read_edge_list, py::arg("path"),
        py::arg("indexing") = 0, py::arg("force_ones") = true,
        py::arg("n") = 0, "Dense symmetric 0/1 adjacency from an edge list.");

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
