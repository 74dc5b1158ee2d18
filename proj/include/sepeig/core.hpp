#pragma once

// Bipartite operator algebra on H_A (x) H_B.
//
// Composite index convention: |e_p, f_q>  <->  p * d_b + q.  With this layout a
// pure state's coefficient matrix M (d_a x d_b) is a plain row-major reshape of
// the state vector.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace sepeig {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class ErrorKind {
  Dims,
  NonHermitian,
  NullState,
  NoConvergence,
  InvalidArgument,
  NotPPT,
  CapExceeded,
  Parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Dims {
  int a = 1;
  int b = 1;

  Dims() = default;
  Dims(int da, int db) : a(da), b(db) {
    if (da < 1 || db < 1) throw Error(ErrorKind::Dims, "dims: factor dimensions must be >= 1");
  }

  int total() const noexcept { return a * b; }
  int index(int p, int q) const noexcept { return p * b + q; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

namespace detail {

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw Error(kind, msg);
}

}  // namespace detail

/// Hermitian operator on H_A (x) H_B with explicit factor dimensions.
///
/// Construction symmetrizes to (M + M^dag)/2 when the asymmetry is below 1e-10
/// and rejects the matrix otherwise, so every instance is Hermitian to machine
/// precision.
class BipartiteOperator {
 public:
  static constexpr double kHermitianTol = 1e-10;

  BipartiteOperator() : BipartiteOperator(Dims{1, 1}, Matrix::Zero(1, 1)) {}

  BipartiteOperator(Dims dims, Matrix m) : dims_(dims), m_(std::move(m)) {
    detail::require(m_.rows() == dims_.total() && m_.cols() == dims_.total(), ErrorKind::Dims,
                    "dims: matrix side " + std::to_string(m_.rows()) + "x" +
                        std::to_string(m_.cols()) + " does not match " +
                        std::to_string(dims_.a) + "*" + std::to_string(dims_.b));
    detail::require(m_.allFinite(), ErrorKind::InvalidArgument, "operator has non-finite entries");
    const double asym = detail::max_abs(m_ - m_.adjoint());
    detail::require(asym < kHermitianTol, ErrorKind::NonHermitian,
                    "non-hermitian input: max |M - M^dag| = " + std::to_string(asym));
    Matrix sym = (m_ + m_.adjoint()) * 0.5;
    m_ = std::move(sym);
  }

  static BipartiteOperator identity(Dims dims) {
    return {dims, Matrix::Identity(dims.total(), dims.total())};
  }
  static BipartiteOperator zero(Dims dims) {
    return {dims, Matrix::Zero(dims.total(), dims.total())};
  }

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return m_; }
  int side() const noexcept { return dims_.total(); }

  /// Component A_pqrs = <e_p, f_q| A |e_r, f_s>.
  cplx component(int p, int q, int r, int s) const {
    return m_(dims_.index(p, q), dims_.index(r, s));
  }

  Eigen::VectorXd eigenvalues() const {
    return Eigen::SelfAdjointEigenSolver<Matrix>(m_, Eigen::EigenvaluesOnly).eigenvalues();
  }
  double min_eigenvalue() const { return eigenvalues()(0); }
  double max_eigenvalue() const { return eigenvalues()(side() - 1); }
  double spectral_norm() const { return eigenvalues().cwiseAbs().maxCoeff(); }
  double max_norm() const { return detail::max_abs(m_); }
  double trace() const { return m_.trace().real(); }

  BipartiteOperator operator+(const BipartiteOperator& o) const {
    check_same(o);
    return {dims_, m_ + o.m_};
  }
  BipartiteOperator operator-(const BipartiteOperator& o) const {
    check_same(o);
    return {dims_, m_ - o.m_};
  }
  BipartiteOperator operator-() const { return {dims_, -m_}; }
  BipartiteOperator operator*(double s) const { return {dims_, m_ * s}; }
  friend BipartiteOperator operator*(double s, const BipartiteOperator& o) { return o * s; }

  /// A + kappa * 1.
  BipartiteOperator shifted(double kappa) const {
    Matrix m = m_;
    m.diagonal().array() += kappa;
    return {dims_, std::move(m)};
  }

 private:
  void check_same(const BipartiteOperator& o) const {
    detail::require(dims_ == o.dims_, ErrorKind::Dims, "dims: operand dimensions differ");
  }

  Dims dims_;
  Matrix m_;
};

enum class Side { A, B };

/// Unit vector on one factor, phase-fixed so that its first nonzero
/// coefficient is real and non-negative.
class LocalVector {
 public:
  static constexpr double kZeroTol = 1e-14;

  LocalVector(Side side, Vector coeffs) : side_(side), v_(std::move(coeffs)) {
    const double n = v_.norm();
    detail::require(n > kZeroTol && std::isfinite(n), ErrorKind::NullState,
                    "null state: local vector has zero norm");
    v_ /= n;
    fix_phase(v_);
  }

  static LocalVector basis(Side side, int dim, int k) {
    detail::require(k >= 0 && k < dim, ErrorKind::Dims, "dims: basis index out of range");
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return {side, std::move(v)};
  }

  Side side() const noexcept { return side_; }
  int size() const noexcept { return static_cast<int>(v_.size()); }
  const Vector& coeffs() const noexcept { return v_; }

  LocalVector conjugate() const { return {side_, v_.conjugate()}; }

  /// Rotates v in place so the first coefficient with |c| > 1e-12 is real >= 0.
  static void fix_phase(Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double mag = std::abs(v(i));
      if (mag > 1e-12) {
        v *= std::conj(v(i)) / mag;
        v(i) = mag;
        return;
      }
    }
  }

 private:
  Side side_;
  Vector v_;
};

/// Minimal distance between two unit vectors over a relative global phase.
inline double phase_distance(const Vector& x, const Vector& y) {
  const double ov = std::abs(x.dot(y));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - ov)));
}

/// Normalized vector on H_A (x) H_B.
class PureBipartiteState {
 public:
  PureBipartiteState(Dims dims, Vector v) : dims_(dims), v_(std::move(v)) {
    detail::require(v_.size() == dims_.total(), ErrorKind::Dims,
                    "dims: state length does not match d_a*d_b");
    const double n = v_.norm();
    detail::require(n > 1e-14 && std::isfinite(n), ErrorKind::NullState, "null state");
    v_ /= n;
  }

  static PureBipartiteState product(const LocalVector& a, const LocalVector& b) {
    detail::require(a.side() == Side::A && b.side() == Side::B, ErrorKind::InvalidArgument,
                    "product state expects (A, B) local vectors");
    Vector v(a.size() * b.size());
    for (int p = 0; p < a.size(); ++p)
      v.segment(p * b.size(), b.size()) = a.coeffs()(p) * b.coeffs();
    return {Dims{a.size(), b.size()}, std::move(v)};
  }

  const Dims& dims() const noexcept { return dims_; }
  const Vector& vector() const noexcept { return v_; }

  /// M with M(i, j) = psi_{i,j}.
  Matrix coefficient_matrix() const {
    Matrix m(dims_.a, dims_.b);
    for (int i = 0; i < dims_.a; ++i)
      for (int j = 0; j < dims_.b; ++j) m(i, j) = v_(dims_.index(i, j));
    return m;
  }

  BipartiteOperator projector() const { return {dims_, v_ * v_.adjoint()}; }

 private:
  Dims dims_;
  Vector v_;
};

/// Trace-one positive-semidefinite operator.
class DensityOperator {
 public:
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = 1e-10;

  explicit DensityOperator(BipartiteOperator op) : op_(std::move(op)) {
    const double tr = op_.trace();
    detail::require(std::abs(tr - 1.0) < kTraceTol, ErrorKind::InvalidArgument,
                    "density operator trace " + std::to_string(tr) + " != 1");
    const double lmin = op_.min_eigenvalue();
    detail::require(lmin >= -kPositivityTol, ErrorKind::InvalidArgument,
                    "density operator has negative eigenvalue " + std::to_string(lmin));
  }

  DensityOperator(const PureBipartiteState& psi) : DensityOperator(psi.projector()) {}

  const BipartiteOperator& op() const noexcept { return op_; }
  const Dims& dims() const noexcept { return op_.dims(); }
  const Matrix& matrix() const noexcept { return op_.matrix(); }

 private:
  BipartiteOperator op_;
};

/// A_a = <a| A |a>, an operator on H_B.
inline Matrix project_a(const BipartiteOperator& op, const LocalVector& a) {
  const Dims& d = op.dims();
  detail::require(a.side() == Side::A && a.size() == d.a, ErrorKind::Dims,
                  "dims: project_a expects a vector on A of length d_a");
  const Matrix& m = op.matrix();
  const Vector& av = a.coeffs();
  Matrix out = Matrix::Zero(d.b, d.b);
  for (int p = 0; p < d.a; ++p) {
    const cplx cp = std::conj(av(p));
    if (cp == cplx{}) continue;
    for (int r = 0; r < d.a; ++r) {
      const cplx w = cp * av(r);
      if (w == cplx{}) continue;
      out += w * m.block(p * d.b, r * d.b, d.b, d.b);
    }
  }
  return (out + out.adjoint()) * 0.5;
}

/// A_b = <b| A |b>, an operator on H_A.
inline Matrix project_b(const BipartiteOperator& op, const LocalVector& b) {
  const Dims& d = op.dims();
  detail::require(b.side() == Side::B && b.size() == d.b, ErrorKind::Dims,
                  "dims: project_b expects a vector on B of length d_b");
  const Matrix& m = op.matrix();
  const Vector& bv = b.coeffs();
  Matrix out(d.a, d.a);
  for (int p = 0; p < d.a; ++p)
    for (int r = 0; r < d.a; ++r)
      out(p, r) = bv.dot(m.block(p * d.b, r * d.b, d.b, d.b) * bv);
  return (out + out.adjoint()) * 0.5;
}

/// Transpose on subsystem B: A'_{(p,q),(r,s)} = A_{(p,s),(r,q)}.
inline BipartiteOperator partial_transpose(const BipartiteOperator& op) {
  const Dims& d = op.dims();
  const Matrix& m = op.matrix();
  Matrix out(d.total(), d.total());
  for (int p = 0; p < d.a; ++p)
    for (int r = 0; r < d.a; ++r)
      out.block(p * d.b, r * d.b, d.b, d.b) = m.block(p * d.b, r * d.b, d.b, d.b).transpose();
  return {d, std::move(out)};
}

namespace detail {

inline double real_part_checked(cplx v) {
  const double scale = std::max(1.0, std::abs(v.real()));
  require(std::abs(v.imag()) < 1e-8 * scale, ErrorKind::NonHermitian,
          "non-hermitian input: imaginary residue " + std::to_string(v.imag()));
  return v.real();
}

}  // namespace detail

/// tr(rho * op).
inline double expectation(const BipartiteOperator& op, const DensityOperator& rho) {
  detail::require(op.dims() == rho.dims(), ErrorKind::Dims, "dims: operator and state differ");
  // tr(R A) = sum_ij R_ij A_ji
  const cplx tr = (rho.matrix().transpose().cwiseProduct(op.matrix())).sum();
  return detail::real_part_checked(tr);
}

/// Expectation of op in an arbitrary (not necessarily normalized) Hermitian
/// operator, used where intermediate mixtures need no validation.
inline double trace_product(const BipartiteOperator& op, const Matrix& rho) {
  const cplx tr = (rho.transpose().cwiseProduct(op.matrix())).sum();
  return detail::real_part_checked(tr);
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector v(a.size() * b.size());
  for (Eigen::Index p = 0; p < a.size(); ++p) v.segment(p * b.size(), b.size()) = a(p) * b;
  return v;
}

/// g(a, b) = <a, b| A |a, b>.
inline double product_value(const BipartiteOperator& op, const LocalVector& a,
                            const LocalVector& b) {
  const Dims& d = op.dims();
  detail::require(a.side() == Side::A && b.side() == Side::B && a.size() == d.a &&
                      b.size() == d.b,
                  ErrorKind::Dims, "dims: product_value vector lengths do not match");
  const Vector v = kron(a.coeffs(), b.coeffs());
  return detail::real_part_checked(v.dot(op.matrix() * v));
}

}  // namespace sepeig
