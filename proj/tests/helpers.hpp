#pragma once

#include <gtest/gtest.h>

#include "sepeig/sepeig.hpp"

namespace sepeig::testing {

inline LocalVector e(int k, int dim = 2) { return LocalVector::basis(Side::A, dim, k); }
inline LocalVector f(int k, int dim = 2) { return LocalVector::basis(Side::B, dim, k); }

inline BipartiteOperator bell_projector() { return bell_phi().projector(); }

/// sum_k w_k |k><k| in the composite basis.
inline BipartiteOperator diagonal(Dims d, std::initializer_list<double> w) {
  Matrix m = Matrix::Zero(d.total(), d.total());
  int i = 0;
  for (double x : w) m(i, i) = x, ++i;
  return {d, m};
}

inline double max_diff(const Matrix& x, const Matrix& y) { return (x - y).cwiseAbs().maxCoeff(); }

inline PureBipartiteState cos_sin(double theta) {
  Vector v = Vector::Zero(4);
  v(0) = std::cos(theta);
  v(3) = std::sin(theta);
  return {{2, 2}, v};
}

inline void expect_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected an error";
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), kind) << err.what();
  }
}

}  // namespace sepeig::testing
