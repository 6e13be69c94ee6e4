#include "speccomm/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "speccomm/rng.hpp"

namespace speccomm {

namespace {

void apply_canonical_sign(Matrix& v) {
  for (int c = 0; c < v.cols(); ++c) {
    int arg = 0;
    for (int i = 1; i < v.rows(); ++i)
      if (std::abs(v(i, c)) > std::abs(v(arg, c))) arg = i;
    if (v(arg, c) < 0.0) v.col(c) = -v.col(c);
  }
}

}  // namespace

SpectralDecomposition eig_sym(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("matrix must be square");
  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
  if (asym > 1e-10)
    throw std::invalid_argument("matrix is not symmetric (max deviation " +
                                std::to_string(asym) + ")");

  Matrix a = m;  // column-major buffer, overwritten with eigenvectors
  Vector w(n);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n,
                                  w.data());
  if (info != 0)
    throw std::runtime_error("eigensolver failed to converge (info=" +
                             std::to_string(info) + ")");

  // |value| descending; exact-|value| ties put the positive one first; equal
  // values keep LAPACK's ascending order (stable).
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    const double ai = std::abs(w(i)), aj = std::abs(w(j));
    if (ai != aj) return ai > aj;
    return w(i) > w(j);
  });

  SpectralDecomposition d;
  d.eigenvalues = Vector(n);
  d.eigenvectors = Matrix(n, n);
  for (int c = 0; c < n; ++c) {
    d.eigenvalues(c) = w(idx[c]);
    d.eigenvectors.col(c) = a.col(idx[c]);
  }
  apply_canonical_sign(d.eigenvectors);
  return d;
}

Matrix leading_eigenspace(const SpectralDecomposition& d, int k) {
  const int n = static_cast<int>(d.eigenvectors.rows());
  if (k < 1 || k > n) throw std::invalid_argument("k outside 1..n");
  return d.eigenvectors.leftCols(k);
}

Matrix normalized_laplacian(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Vector s(n);
  for (int i = 0; i < n; ++i) {
    const double d = a.row(i).sum();
    if (!(d > 0.0))
      throw std::invalid_argument("non-positive row sum in adjacency matrix");
    s(i) = 1.0 / std::sqrt(d);
  }
  return s.asDiagonal() * a * s.asDiagonal();
}

double spectral_norm_sym(const Matrix& m, int max_steps) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 0.0;
  if (n == 1) return std::abs(m(0, 0));
  const int steps = std::min(max_steps, n);

  // Lanczos with full reorthogonalization; extreme Ritz values of the
  // tridiagonal matrix converge to the extreme eigenvalues.
  Matrix v(n, steps);
  Vector alpha(steps), beta(steps);
  auto eng = make_engine(0x5eed5eedULL);
  Vector q(n);
  for (int i = 0; i < n; ++i) q(i) = uniform01(eng) - 0.5;
  q.normalize();
  v.col(0) = q;
  int m_used = 0;
  Vector r;
  for (int j = 0; j < steps; ++j) {
    r = m * v.col(j);
    alpha(j) = v.col(j).dot(r);
    r -= alpha(j) * v.col(j);
    if (j > 0) r -= beta(j - 1) * v.col(j - 1);
    for (int pass = 0; pass < 2; ++pass)
      for (int c = 0; c <= j; ++c) r -= v.col(c).dot(r) * v.col(c);
    m_used = j + 1;
    const double nr = r.norm();
    if (j + 1 < steps) {
      if (nr < 1e-12) break;  // invariant subspace found
      beta(j) = nr;
      v.col(j + 1) = r / nr;
    }
  }

  Vector diag = alpha.head(m_used);
  Vector off = m_used > 1 ? beta.head(m_used - 1).eval() : Vector();
  const int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'N', m_used, diag.data(),
                                 m_used > 1 ? off.data() : nullptr, nullptr, 1);
  if (info != 0)
    throw std::runtime_error("tridiagonal eigensolver failed (info=" +
                             std::to_string(info) + ")");
  return std::max(std::abs(diag(0)), std::abs(diag(m_used - 1)));
}

}  // namespace speccomm
