#pragma once

// Seeded sampling helpers.  Every random stream is derived from a user seed and
// a pair of stream coordinates (e.g. branch and start index), so parallel
// workers draw the same numbers no matter which thread runs them.

#include <cstdint>
#include <random>
#include <vector>

#include "sepeig/core.hpp"

namespace sepeig {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng stream_rng(std::uint64_t seed, std::uint64_t i = 0, std::uint64_t j = 0) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ i) ^ (j * 0xd1b54a32d192ed03ULL)));
}

inline cplx complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// Haar-random unit vector (complex Gaussian, normalized).
inline Vector haar_vector(int dim, Rng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complex_normal(rng);
  return v / v.norm();
}

inline LocalVector haar_local(Side side, int dim, Rng& rng) {
  return {side, haar_vector(dim, rng)};
}

inline Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = complex_normal(rng);
  return m;
}

/// Haar unitary via QR of a Gaussian matrix with the diagonal phase fix.
inline Matrix haar_unitary(int dim, Rng& rng) {
  const Matrix z = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

/// GUE-distributed Hermitian operator (G + G^dag) / 2.
inline BipartiteOperator random_hermitian(Dims dims, Rng& rng) {
  const Matrix g = gaussian_matrix(dims.total(), dims.total(), rng);
  return {dims, (g + g.adjoint()) * 0.5};
}

/// Positive operator f^dag f with standard-normal complex f.
inline BipartiteOperator random_positive(Dims dims, Rng& rng) {
  const Matrix f = gaussian_matrix(dims.total(), dims.total(), rng);
  return {dims, f.adjoint() * f};
}

/// Flat Dirichlet weights (normalized exponentials).
inline std::vector<double> dirichlet_weights(int n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) sum += (x = e(rng));
  for (auto& x : w) x /= sum;
  return w;
}

}  // namespace sepeig
