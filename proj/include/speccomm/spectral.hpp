#pragma once

#include "types.hpp"

namespace speccomm {

struct SpectralDecomposition {
  Vector eigenvalues;   // |l_1| >= ... >= |l_n|; positive first on exact ties
  Matrix eigenvectors;  // column i is the unit eigenvector for eigenvalues(i)
};

// Dense symmetric eigendecomposition with the ordering above and a
// deterministic sign convention: each column's largest-|entry| element
// (lowest index on ties) is made non-negative. Throws std::invalid_argument
// if m deviates from symmetry by more than 1e-10, std::runtime_error if the
// solver fails to converge.
SpectralDecomposition eig_sym(const Matrix& m);

// First k columns of d.eigenvectors.
Matrix leading_eigenspace(const SpectralDecomposition& d, int k);

// D^{-1/2} A D^{-1/2} with D = diag(row sums).
Matrix normalized_laplacian(const Matrix& a);

// Largest |eigenvalue| of a symmetric matrix via Lanczos with full
// reorthogonalization; avoids a full decomposition for norm checks.
double spectral_norm_sym(const Matrix& m, int max_steps = 120);

}  // namespace speccomm
