#pragma once

// Standard states: Bell states, the coherent-state superposition mixed with
// vacuum (in a truncated two-mode Fock space), Werner states, random product
// and separable states, and the 3x3 tiles-UPB bound entangled state.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "sepeig/core.hpp"
#include "sepeig/random.hpp"

namespace sepeig {

/// (|0,1> + |1,0>) / sqrt(2)
inline PureBipartiteState bell_phi() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::numbers::sqrt2;
  return {Dims{2, 2}, v};
}

/// (|0,0> + |1,1>) / sqrt(2)
inline PureBipartiteState bell_phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return {Dims{2, 2}, v};
}

struct FockTruncation {
  int n_max = 12;
  double tail_mass_tol = 1e-10;

  Dims dims() const { return {n_max + 1, n_max + 1}; }
};

/// Poisson mass beyond n_max for a coherent amplitude with |alpha|^2 = mean.
inline double coherent_tail_mass(double mean, int n_max) {
  if (mean == 0.0) return 0.0;
  // Sum the tail directly; 1 - head loses all precision at the 1e-12 level.
  double term = std::exp(-mean);
  for (int n = 1; n <= n_max; ++n) term *= mean / n;
  double tail = 0.0;
  for (int n = n_max + 1; n < n_max + 400; ++n) {
    term *= mean / n;
    tail += term;
    if (term < 1e-300 || term < tail * 1e-17) break;
  }
  return tail;
}

struct ChiMinus {
  PureBipartiteState state;
  double analytic_norm;  // N = [2(1 - exp(-2(|a|^2 + |b|^2)))]^(-1/2)
  double numeric_norm;   // N actually needed after truncation
  double norm_drift;     // |numeric - analytic| / analytic
};

/// N (|alpha, beta> - |-alpha, -beta>), truncated to Fock levels 0..n_max.
inline ChiMinus chi_minus(cplx alpha, cplx beta, const FockTruncation& trunc = {}) {
  detail::require(trunc.n_max >= 1, ErrorKind::InvalidArgument, "n_max must be >= 1");
  detail::require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()) &&
                      std::isfinite(beta.real()) && std::isfinite(beta.imag()),
                  ErrorKind::InvalidArgument, "coherent amplitudes must be finite");
  const double s = std::norm(alpha) + std::norm(beta);
  detail::require(s > 0.0, ErrorKind::NullState, "null state: alpha = beta = 0");
  const double tail = std::max(coherent_tail_mass(std::norm(alpha), trunc.n_max),
                               coherent_tail_mass(std::norm(beta), trunc.n_max));
  detail::require(tail < trunc.tail_mass_tol, ErrorKind::InvalidArgument,
                  "Fock truncation tail mass " + std::to_string(tail) + " exceeds tolerance");

  const int levels = trunc.n_max + 1;
  const Dims dims{levels, levels};
  // <n|alpha> = exp(-|alpha|^2/2) alpha^n / sqrt(n!)
  auto amplitudes = [&](cplx z) {
    Vector c(levels);
    c(0) = 1.0;
    for (int n = 1; n < levels; ++n) c(n) = c(n - 1) * z / std::sqrt(static_cast<double>(n));
    return c;
  };
  const Vector ca = amplitudes(alpha);
  const Vector cb = amplitudes(beta);
  const double envelope = std::exp(-0.5 * s);
  const double analytic = 1.0 / std::sqrt(2.0 * (1.0 - std::exp(-2.0 * s)));

  Vector v = Vector::Zero(dims.total());
  for (int n = 0; n < levels; ++n)
    for (int m = 0; m < levels; ++m)
      if ((n + m) % 2 == 1) v(dims.index(n, m)) = 2.0 * analytic * envelope * ca(n) * cb(m);
  const double norm = v.norm();
  const double numeric = analytic / norm;
  return {PureBipartiteState(dims, v), analytic, numeric, std::abs(numeric - analytic) / analytic};
}

/// eta |chi_-><chi_-| + (1 - eta) |0,0><0,0|
inline DensityOperator rho_mix(cplx alpha, cplx beta, double eta, const FockTruncation& trunc = {}) {
  detail::require(eta > 0.0 && eta < 1.0, ErrorKind::InvalidArgument, "eta must lie in (0, 1)");
  const ChiMinus chi = chi_minus(alpha, beta, trunc);
  const Vector& v = chi.state.vector();
  Matrix m = eta * (v * v.adjoint());
  m(0, 0) += 1.0 - eta;
  return DensityOperator(BipartiteOperator(chi.state.dims(), std::move(m)));
}

/// eta above which rho_mix is detected by |Phi><Phi|: sinh(|a|^2+|b|^2)/|a+b|^2.
inline double coherent_mixture_threshold(cplx alpha, cplx beta) {
  return std::sinh(std::norm(alpha) + std::norm(beta)) / std::norm(alpha + beta);
}

/// |Phi><Phi| on Fock levels {0,1} (x) {0,1}, zero on the rest of the space.
inline BipartiteOperator embedded_bell_projector(const FockTruncation& trunc = {}) {
  const Dims dims = trunc.dims();
  Vector v = Vector::Zero(dims.total());
  v(dims.index(0, 1)) = v(dims.index(1, 0)) = 1.0 / std::numbers::sqrt2;
  return {dims, v * v.adjoint()};
}

/// p |Phi+><Phi+| + (1 - p) 1/4
inline DensityOperator werner(double p) {
  detail::require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument, "p must lie in [0, 1]");
  const Vector v = bell_phi_plus().vector();
  Matrix m = p * (v * v.adjoint());
  m.diagonal().array() += (1.0 - p) / 4.0;
  return DensityOperator(BipartiteOperator(Dims{2, 2}, std::move(m)));
}

inline DensityOperator maximally_mixed(Dims dims) {
  return DensityOperator(BipartiteOperator::identity(dims) * (1.0 / dims.total()));
}

inline PureBipartiteState random_product(Dims dims, Rng& rng) {
  const LocalVector a = haar_local(Side::A, dims.a, rng);
  const LocalVector b = haar_local(Side::B, dims.b, rng);
  return PureBipartiteState::product(a, b);
}

inline PureBipartiteState random_product(Dims dims, std::uint64_t seed) {
  Rng rng = stream_rng(seed, 0x70726f64);
  return random_product(dims, rng);
}

/// Dirichlet-weighted mixture of `terms` Haar-random product projectors.
inline DensityOperator random_separable(Dims dims, int terms, Rng& rng) {
  detail::require(terms >= 1, ErrorKind::InvalidArgument, "terms must be >= 1");
  const std::vector<double> w = dirichlet_weights(terms, rng);
  Matrix m = Matrix::Zero(dims.total(), dims.total());
  for (int k = 0; k < terms; ++k) {
    const Vector v = random_product(dims, rng).vector();
    m += w[k] * (v * v.adjoint());
  }
  m /= m.trace().real();
  return DensityOperator(BipartiteOperator(dims, std::move(m)));
}

inline DensityOperator random_separable(Dims dims, int terms, std::uint64_t seed) {
  Rng rng = stream_rng(seed, 0x73657061);
  return random_separable(dims, terms, rng);
}

/// The five product vectors of the 3x3 "tiles" unextendible product basis.
inline std::vector<PureBipartiteState> tiles_upb_vectors() {
  const double r2 = 1.0 / std::numbers::sqrt2;
  auto local = [](std::initializer_list<double> c) {
    Vector v(static_cast<Eigen::Index>(c.size()));
    int i = 0;
    for (double x : c) v(i++) = x;
    return v;
  };
  auto prod = [](const Vector& a, const Vector& b) {
    return PureBipartiteState(Dims{3, 3}, kron(a, b));
  };
  return {
      prod(local({1, 0, 0}), local({r2, -r2, 0})),
      prod(local({r2, -r2, 0}), local({0, 0, 1})),
      prod(local({0, 0, 1}), local({0, r2, -r2})),
      prod(local({0, r2, -r2}), local({1, 0, 0})),
      prod(local({1, 1, 1}) / std::sqrt(3.0), local({1, 1, 1}) / std::sqrt(3.0)),
  };
}

/// Sum of the tiles-UPB projectors.
inline BipartiteOperator tiles_upb_projector() {
  Matrix p = Matrix::Zero(9, 9);
  for (const auto& psi : tiles_upb_vectors()) p += psi.vector() * psi.vector().adjoint();
  return {Dims{3, 3}, std::move(p)};
}

/// (1 - sum_i |psi_i><psi_i|) / 4: PPT and entangled.
inline DensityOperator tiles_upb_state() {
  return DensityOperator(BipartiteOperator::identity(Dims{3, 3}) * 0.25 -
                         tiles_upb_projector() * 0.25);
}

}  // namespace sepeig
