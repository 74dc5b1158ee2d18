#pragma once

// Schmidt decomposition through the singular values of the coefficient matrix
// M = sum_ij psi_ij |e_i><f_j|.

#include <algorithm>
#include <numeric>
#include <vector>

#include "sepeig/core.hpp"

namespace sepeig {

inline constexpr double kSchmidtTol = 1e-9;

/// psi = sum_q m_q |a_q', b_q>, m_q > kSchmidtTol, non-increasing.
///
/// The right vectors are phase-fixed; each left vector absorbs the phase of
/// its term, so the reconstruction is exact (not only up to global phase).
struct SchmidtDecomposition {
  Dims dims;
  std::vector<double> coefficients;
  Matrix left;   // d_a x rank, orthonormal columns |a_q'>
  Matrix right;  // d_b x rank, orthonormal columns |b_q>

  int rank() const noexcept { return static_cast<int>(coefficients.size()); }

  LocalVector left_vector(int q) const { return {Side::A, left.col(q)}; }
  LocalVector right_vector(int q) const { return {Side::B, right.col(q)}; }

  Vector reconstruct() const {
    Vector v = Vector::Zero(dims.total());
    for (int q = 0; q < rank(); ++q) v += coefficients[q] * kron(left.col(q), right.col(q));
    return v;
  }
};

namespace detail {

inline bool lex_less(const Vector& x, const Vector& y) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).real() != y(i).real()) return x(i).real() < y(i).real();
    if (x(i).imag() != y(i).imag()) return x(i).imag() < y(i).imag();
  }
  return false;
}

}  // namespace detail

inline SchmidtDecomposition schmidt(const PureBipartiteState& psi) {
  const Dims& d = psi.dims();
  const Matrix m = psi.coefficient_matrix();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();

  // M = sum_q s_q u_q v_q^dag  <->  psi = sum_q s_q |u_q> (x) |conj(v_q)>
  struct Term {
    double s;
    Vector a;
    Vector b;
  };
  std::vector<Term> terms;
  for (Eigen::Index q = 0; q < s.size(); ++q) {
    if (s(q) <= kSchmidtTol) continue;
    Vector b = svd.matrixV().col(q).conjugate();
    Vector a = svd.matrixU().col(q);
    Vector bf = b;
    LocalVector::fix_phase(bf);
    // bf = b * phase, so a must carry conj(phase) for the product to stay put.
    const cplx phase = bf.dot(b) == cplx{} ? cplx{1.0} : bf.dot(b) / std::abs(bf.dot(b));
    terms.push_back({s(q), a * phase, bf});
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (std::abs(x.s - y.s) > kSchmidtTol) return x.s > y.s;
    return detail::lex_less(x.b, y.b);
  });

  SchmidtDecomposition out;
  out.dims = d;
  out.left.resize(d.a, static_cast<Eigen::Index>(terms.size()));
  out.right.resize(d.b, static_cast<Eigen::Index>(terms.size()));
  for (std::size_t q = 0; q < terms.size(); ++q) {
    out.coefficients.push_back(terms[q].s);
    out.left.col(q) = terms[q].a;
    out.right.col(q) = terms[q].b;
  }
  return out;
}

inline int schmidt_rank(const PureBipartiteState& psi) { return schmidt(psi).rank(); }

}  // namespace sepeig
