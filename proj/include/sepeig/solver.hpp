#pragma once

// Separability eigenvalue problem
//
//   A_b |a> = g |a>,   A_a |b> = g |b>,   <a|a> = <b|b> = 1,
//
// whose solutions are the stationary points of g(a, b) = <a,b|A|a,b> on the
// product manifold.  The largest solution is f_AB(A), the maximal expectation
// value of A over separable states; the smallest is the separable infimum.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sepeig/core.hpp"
#include "sepeig/parallel.hpp"
#include "sepeig/random.hpp"
#include "sepeig/schmidt.hpp"

namespace sepeig {

struct SolverConfig {
  int starts = 64;
  int max_iter = 500;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  double dedup_tol = 1e-7;
  /// Also search interior (saddle) solutions through fixed eigen-branch pairs.
  bool interior = true;
  /// Random starts per interior branch pair.
  int interior_starts = 8;
  /// Worker threads; 0 = SEPEIG_THREADS / hardware default.
  int threads = 0;

  void validate() const {
    detail::require(starts >= 1, ErrorKind::InvalidArgument, "starts must be >= 1");
    detail::require(max_iter >= 1, ErrorKind::InvalidArgument, "max_iter must be >= 1");
    detail::require(tol > 0.0, ErrorKind::InvalidArgument, "tol must be > 0");
    detail::require(dedup_tol > tol, ErrorKind::InvalidArgument, "dedup_tol must exceed tol");
    detail::require(interior_starts >= 0, ErrorKind::InvalidArgument,
                    "interior_starts must be >= 0");
  }
};

struct SepEigenpair {
  double g;
  LocalVector a;
  LocalVector b;
  /// max(|A_b a - g a|, |A_a b - g b|)
  double residual;
};

struct SepSpectrum {
  std::vector<SepEigenpair> pairs;  // sorted by g, descending
  double sup_g = 0.0;
  double inf_g = 0.0;
  int starts_used = 0;
  double converged_fraction = 0.0;
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(double best_residual)
      : Error(ErrorKind::NoConvergence,
              "no convergence: best residual " + std::to_string(best_residual)),
        best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

namespace detail {

inline Matrix project_a_raw(const Matrix& m, const Dims& d, const Vector& a) {
  Matrix out = Matrix::Zero(d.b, d.b);
  for (int p = 0; p < d.a; ++p)
    for (int r = 0; r < d.a; ++r)
      out.noalias() += (std::conj(a(p)) * a(r)) * m.block(p * d.b, r * d.b, d.b, d.b);
  return (out + out.adjoint()) * 0.5;
}

inline Matrix project_b_raw(const Matrix& m, const Dims& d, const Vector& b) {
  Matrix out(d.a, d.a);
  for (int p = 0; p < d.a; ++p)
    for (int r = 0; r < d.a; ++r) out(p, r) = b.dot(m.block(p * d.b, r * d.b, d.b, d.b) * b);
  return (out + out.adjoint()) * 0.5;
}

inline double product_value_raw(const Matrix& m, const Vector& a, const Vector& b) {
  const Vector v = kron(a, b);
  return v.dot(m * v).real();
}

inline double residual_raw(const Matrix& m, const Dims& d, const Vector& a, const Vector& b,
                           double g) {
  const double ra = (project_b_raw(m, d, b) * a - g * a).norm();
  const double rb = (project_a_raw(m, d, a) * b - g * b).norm();
  return std::max(ra, rb);
}

/// Eigenvector for ascending eigen-index k of h.  Inside a degenerate cluster
/// the vector of the cluster's eigenspace closest to `prev` is returned.
inline Vector pick_eigenvector_2x2(const Matrix& h, int k, const Vector& prev) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cplx c = h(0, 1);
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double rad = std::hypot(half, std::abs(c));
  const double scale = std::max({1.0, std::abs(mean) + rad});
  if (2.0 * rad < 1e-12 * scale) {
    const double n = prev.norm();
    if (n > 1e-8) return prev / n;
    Vector e = Vector::Zero(2);
    e(k) = 1.0;
    return e;
  }
  const double lam = k == 1 ? mean + rad : mean - rad;
  Vector v1(2), v2(2);
  v1 << c, lam - a;
  v2 << lam - d, std::conj(c);
  const Vector& v = v1.squaredNorm() >= v2.squaredNorm() ? v1 : v2;
  return v / v.norm();
}

inline Vector pick_eigenvector(const Matrix& h, int k, const Vector& prev) {
  if (h.rows() == 2) return pick_eigenvector_2x2(h, k, prev);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double degen = 1e-12 * scale;
  int lo = k, hi = k;
  while (lo > 0 && lam(k) - lam(lo - 1) < degen) --lo;
  while (hi + 1 < lam.size() && lam(hi + 1) - lam(k) < degen) ++hi;
  if (hi > lo) {
    const auto block = vecs.middleCols(lo, hi - lo + 1);
    const Vector proj = block * (block.adjoint() * prev);
    const double n = proj.norm();
    if (n > 1e-8) return proj / n;
  }
  return vecs.col(k);
}

/// Orthonormal basis whose first column is parallel to v (unit).
inline Matrix extend_basis(const Vector& v) {
  const Matrix col = v;
  Eigen::HouseholderQR<Matrix> qr(col);
  return qr.householderQ() * Matrix::Identity(v.size(), v.size());
}

/// One Newton step for the stationary condition of g on the product
/// manifold, in tangent coordinates a + Ua x, b + Ub y.
inline void newton_step(const Matrix& m, const Dims& d, Vector& a, Vector& b) {
  const int n1 = d.a - 1;
  const int n2 = d.b - 1;
  const int n = n1 + n2;
  if (n == 0) return;
  const Matrix qa = extend_basis(a);
  const Matrix qb = extend_basis(b);
  const Vector v = kron(a, b);
  const Vector av = m * v;
  const double g0 = v.dot(av).real();

  Matrix jac(d.total(), n);
  for (int k = 0; k < n1; ++k) jac.col(k) = kron(qa.col(k + 1), b);
  for (int l = 0; l < n2; ++l) jac.col(n1 + l) = kron(a, qb.col(l + 1));
  const Vector c = jac.adjoint() * av;
  Matrix h = jac.adjoint() * m * jac;
  h.diagonal().array() -= g0;

  // <v|A|Ua_k (x) Ub_l>
  Matrix w(n1, n2);
  for (int k = 0; k < n1; ++k)
    for (int l = 0; l < n2; ++l) w(k, l) = av.dot(kron(qa.col(k + 1), qb.col(l + 1)));
  Matrix s = Matrix::Zero(n, n);
  s.block(0, n1, n1, n2) = w * 0.5;
  s.block(n1, 0, n2, n1) = w.transpose() * 0.5;

  // Real quadratic model g0 + grad.r + r^T M r with r = [Re z; Im z].
  Eigen::MatrixXd mm(2 * n, 2 * n);
  mm.topLeftCorner(n, n) = h.real() + 2.0 * s.real();
  mm.topRightCorner(n, n) = -h.imag() - 2.0 * s.imag();
  mm.bottomLeftCorner(n, n) = h.imag() - 2.0 * s.imag();
  mm.bottomRightCorner(n, n) = h.real() - 2.0 * s.real();
  mm = (mm + mm.transpose()).eval() * 0.5;
  Eigen::VectorXd grad(2 * n);
  grad.head(n) = 2.0 * c.real();
  grad.tail(n) = 2.0 * c.imag();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(2.0 * mm);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double cut = 1e-10 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  Eigen::VectorXd coeff = es.eigenvectors().transpose() * grad;
  for (int i = 0; i < coeff.size(); ++i) coeff(i) = std::abs(lam(i)) > cut ? coeff(i) / lam(i) : 0.0;
  const Eigen::VectorXd r = -(es.eigenvectors() * coeff);

  Vector z(n);
  for (int i = 0; i < n; ++i) z(i) = cplx(r(i), r(n + i));
  Vector an = a + qa.rightCols(n1) * z.head(n1);
  Vector bn = b + qb.rightCols(n2) * z.tail(n2);
  a = an / an.norm();
  b = bn / bn.norm();
}

struct Attempt {
  bool converged = false;
  double g = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  Vector a;
  Vector b;
};

/// Polishes (a, b) by Newton iteration; returns true when the residual drops
/// below tol without moving g by more than `drift`.  At singular stationary
/// points Newton is only linearly convergent, so iteration continues as long
/// as the residual keeps contracting.
inline bool newton_polish(const Matrix& m, const Dims& d, Attempt& at, double tol,
                          double drift) {
  constexpr int kMaxSteps = 80;
  constexpr int kSlowSteps = 3;
  Vector a = at.a;
  Vector b = at.b;
  double res = at.residual;
  int slow = 0;
  for (int it = 0; it < kMaxSteps && res >= tol && slow < kSlowSteps; ++it) {
    newton_step(m, d, a, b);
    const double g = product_value_raw(m, a, b);
    const double next = residual_raw(m, d, a, b, g);
    if (!std::isfinite(next)) return false;
    slow = next > 0.8 * res ? slow + 1 : 0;
    res = next;
  }
  const double g = product_value_raw(m, a, b);
  if (res >= tol || std::abs(g - at.g) > drift) return false;
  at.a = a;
  at.b = b;
  at.g = g;
  at.residual = res;
  at.converged = true;
  return true;
}

/// Alternating eigen-iteration on fixed branches (ia, ib) of the ascending
/// spectra of A_b and A_a.  Once the residual is small, Newton polishing
/// takes over; starts whose residual stops improving are abandoned.
inline Attempt alternate(const Matrix& m, const Dims& d, int ia, int ib, Vector a, Vector b,
                         const SolverConfig& cfg) {
  constexpr int kStagnationWindow = 60;
  Attempt at;
  double g_prev = std::numeric_limits<double>::quiet_NaN();
  double polish_below = 1e-2;
  double best_res = std::numeric_limits<double>::infinity();
  int since_best = 0;
  Matrix ab = project_b_raw(m, d, b);
  for (int it = 0; it < cfg.max_iter; ++it) {
    a = pick_eigenvector(ab, ia, a);
    const Matrix aa = project_a_raw(m, d, a);
    b = pick_eigenvector(aa, ib, b);
    const double g = b.dot(aa * b).real();
    ab = project_b_raw(m, d, b);
    const double res = std::max((ab * a - g * a).norm(), (aa * b - g * b).norm());
    at.a = a;
    at.b = b;
    at.g = g;
    at.residual = res;
    if (std::abs(g - g_prev) < cfg.tol && res < cfg.tol) {
      at.converged = true;
      return at;
    }
    if (res < polish_below) {
      polish_below = res * 1e-2;
      if (newton_polish(m, d, at, cfg.tol, std::max(1e-8, 10.0 * res))) return at;
    }
    if (res < 0.9 * best_res) {
      best_res = res;
      since_best = 0;
    } else if (++since_best > kStagnationWindow) {
      break;
    }
    g_prev = g;
  }
  return at;
}

struct Task {
  int ia;
  int ib;
  Vector a0;
  Vector b0;
};

inline std::vector<Attempt> run_tasks(const Matrix& m, const Dims& d,
                                      const std::vector<Task>& tasks, const SolverConfig& cfg) {
  std::vector<Attempt> out(tasks.size());
  parallel_for(tasks.size(), worker_count(cfg.threads), [&](std::size_t i) {
    const Task& t = tasks[i];
    out[i] = alternate(m, d, t.ia, t.ib, t.a0, t.b0, cfg);
  });
  return out;
}

inline void random_tasks(std::vector<Task>& tasks, const Dims& d, std::uint64_t seed,
                         int branch_id, int ia, int ib, int count) {
  for (int s = 0; s < count; ++s) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(branch_id), static_cast<std::uint64_t>(s));
    Vector a = haar_vector(d.a, rng);
    Vector b = haar_vector(d.b, rng);
    LocalVector::fix_phase(a);
    LocalVector::fix_phase(b);
    tasks.push_back({ia, ib, std::move(a), std::move(b)});
  }
}

}  // namespace detail

/// Multistart solution of the separability eigenvalue equations.
///
/// The sup and inf branches run `starts` Haar-random starts each.  With
/// `cfg.interior`, every other pair of eigen-branches (i of A_b, j of A_a) runs
/// `interior_starts` random starts plus one start from every converged
/// extreme solution.  Interior coverage is best effort.
inline SepSpectrum solve_sepeig(const BipartiteOperator& op, const SolverConfig& cfg = {}) {
  cfg.validate();
  const Dims& d = op.dims();
  const Matrix& m = op.matrix();

  std::vector<detail::Task> tasks;
  detail::random_tasks(tasks, d, cfg.seed, 0, d.a - 1, d.b - 1, cfg.starts);
  detail::random_tasks(tasks, d, cfg.seed, 1, 0, 0, cfg.starts);
  std::vector<detail::Attempt> attempts = detail::run_tasks(m, d, tasks, cfg);

  if (cfg.interior && (d.a > 1 || d.b > 1)) {
    std::vector<Vector> seeds;
    for (const auto& at : attempts) {
      if (!at.converged) continue;
      const bool seen = std::any_of(seeds.begin(), seeds.end(), [&](const Vector& s) {
        return phase_distance(s, at.b) < 1e-6;
      });
      if (!seen) seeds.push_back(at.b);
    }
    std::vector<detail::Task> inner;
    int branch_id = 2;
    for (int i = 0; i < d.a; ++i) {
      for (int j = 0; j < d.b; ++j) {
        if ((i == d.a - 1 && j == d.b - 1) || (i == 0 && j == 0)) continue;
        detail::random_tasks(inner, d, cfg.seed, branch_id++, i, j, cfg.interior_starts);
        for (const auto& b : seeds) {
          const Vector a = detail::pick_eigenvector(detail::project_b_raw(m, d, b), i,
                                                          Vector::Zero(d.a));
          inner.push_back({i, j, a, b});
        }
      }
    }
    auto more = detail::run_tasks(m, d, inner, cfg);
    attempts.insert(attempts.end(), std::make_move_iterator(more.begin()),
                    std::make_move_iterator(more.end()));
  }

  SepSpectrum spec;
  spec.starts_used = static_cast<int>(attempts.size());
  int converged = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<SepEigenpair> found;
  for (const auto& at : attempts) {
    best_residual = std::min(best_residual, at.residual);
    if (!at.converged) continue;
    ++converged;
    LocalVector a(Side::A, at.a);
    LocalVector b(Side::B, at.b);
    const double g = product_value(op, a, b);
    found.push_back({g, std::move(a), std::move(b), at.residual});
  }
  if (found.empty()) throw NoConvergence(best_residual);
  spec.converged_fraction = static_cast<double>(converged) / spec.starts_used;

  std::stable_sort(found.begin(), found.end(),
                   [](const SepEigenpair& x, const SepEigenpair& y) { return x.g > y.g; });
  for (auto& p : found) {
    const bool dup = std::any_of(spec.pairs.begin(), spec.pairs.end(), [&](const SepEigenpair& q) {
      return std::abs(p.g - q.g) < cfg.dedup_tol &&
             phase_distance(p.a.coeffs(), q.a.coeffs()) < 1e-6 &&
             phase_distance(p.b.coeffs(), q.b.coeffs()) < 1e-6;
    });
    if (!dup) spec.pairs.push_back(std::move(p));
  }
  spec.sup_g = spec.pairs.front().g;
  spec.inf_g = spec.pairs.back().g;
  return spec;
}

/// Exact spectrum of |psi><psi| from the Schmidt decomposition: (m_q^2,
/// |a_q', b_q>) for every term and (0, |a_p', b_q>) for p != q.
inline SepSpectrum solve_rank_one(const PureBipartiteState& psi) {
  const SchmidtDecomposition sd = schmidt(psi);
  SepSpectrum spec;
  const int r = sd.rank();
  for (int q = 0; q < r; ++q)
    spec.pairs.push_back({sd.coefficients[q] * sd.coefficients[q], sd.left_vector(q),
                          sd.right_vector(q), 0.0});
  for (int p = 0; p < r; ++p)
    for (int q = 0; q < r; ++q)
      if (p != q) spec.pairs.push_back({0.0, sd.left_vector(p), sd.right_vector(q), 0.0});
  std::stable_sort(spec.pairs.begin(), spec.pairs.end(),
                   [](const SepEigenpair& x, const SepEigenpair& y) { return x.g > y.g; });
  spec.sup_g = spec.pairs.front().g;
  // Product vectors orthogonal to psi exist unless d_a = d_b = 1, so the
  // infimum is 0 even when the listed (Schmidt-support) spectrum is {1}.
  spec.inf_g = psi.dims().total() > 1 ? 0.0 : spec.sup_g;
  spec.starts_used = 0;
  spec.converged_fraction = 1.0;
  return spec;
}

/// lambda |psi><psi| when op is (numerically) a nonzero rank-one operator.
struct RankOneForm {
  double lambda;
  PureBipartiteState psi;
};

inline std::optional<RankOneForm> as_rank_one(const BipartiteOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix());
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double norm = lam.cwiseAbs().maxCoeff();
  if (norm == 0.0) return std::nullopt;
  int big = -1;
  for (int i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) > 1e-12 * norm) {
      if (big >= 0) return std::nullopt;
      big = i;
    }
  }
  return RankOneForm{lam(big), PureBipartiteState(op.dims(), es.eigenvectors().col(big))};
}

namespace detail {

/// Best converged value of the sup (upper) or inf branch alone.
inline double solve_extreme(const BipartiteOperator& op, const SolverConfig& cfg, bool upper) {
  cfg.validate();
  const Dims& d = op.dims();
  std::vector<Task> tasks;
  if (upper)
    random_tasks(tasks, d, cfg.seed, 0, d.a - 1, d.b - 1, cfg.starts);
  else
    random_tasks(tasks, d, cfg.seed, 1, 0, 0, cfg.starts);
  const auto attempts = run_tasks(op.matrix(), d, tasks, cfg);
  double best = upper ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& at : attempts) {
    best_residual = std::min(best_residual, at.residual);
    if (!at.converged) continue;
    any = true;
    best = upper ? std::max(best, at.g) : std::min(best, at.g);
  }
  if (!any) throw NoConvergence(best_residual);
  return best;
}

}  // namespace detail

struct SeparableExtrema {
  double sup;
  double inf;
};

/// sup and inf of <a,b|A|a,b>, analytic for rank-one operators.
inline SeparableExtrema separable_extrema(const BipartiteOperator& op, const SolverConfig& cfg = {}) {
  if (auto r1 = as_rank_one(op)) {
    const SepSpectrum s = solve_rank_one(r1->psi);
    if (r1->lambda > 0) return {r1->lambda * s.sup_g, r1->lambda * s.inf_g};
    return {r1->lambda * s.inf_g, r1->lambda * s.sup_g};
  }
  return {detail::solve_extreme(op, cfg, true), detail::solve_extreme(op, cfg, false)};
}

/// f_AB(A): maximal expectation value of A over separable states.
inline double f_ab(const BipartiteOperator& op, const SolverConfig& cfg = {}) {
  if (auto r1 = as_rank_one(op)) {
    const SepSpectrum s = solve_rank_one(r1->psi);
    return r1->lambda > 0 ? r1->lambda * s.sup_g : r1->lambda * s.inf_g;
  }
  return detail::solve_extreme(op, cfg, true);
}

/// inf of <a,b|A|a,b> over product states; equals -f_AB(-A).
inline double inf_ab(const BipartiteOperator& op, const SolverConfig& cfg = {}) {
  if (auto r1 = as_rank_one(op)) {
    const SepSpectrum s = solve_rank_one(r1->psi);
    return r1->lambda > 0 ? r1->lambda * s.inf_g : r1->lambda * s.sup_g;
  }
  return detail::solve_extreme(op, cfg, false);
}

struct Extrema {
  double max;
  double min;
};

namespace detail {

inline Vector qubit(double theta, double phi) {
  Vector v(2);
  v(0) = std::cos(theta);
  v(1) = std::polar(std::sin(theta), phi);
  return v;
}

inline double oracle_value(const Matrix& m, const std::array<double, 4>& x) {
  const Vector v = kron(qubit(x[0], x[1]), qubit(x[2], x[3]));
  return v.dot(m * v).real();
}

/// Pattern search maximizing sign * value from x over the full stencil
/// {-1, 0, 1}^4.  Coordinate-only moves can stall at saddles of real grid
/// points whose ascent direction mixes two angles.
inline double pattern_search(const Matrix& m, std::array<double, 4> x, double step, double sign) {
  static const std::vector<std::array<double, 4>> stencil = [] {
    std::vector<std::array<double, 4>> dirs;
    for (int k = 0; k < 81; ++k) {
      std::array<double, 4> dir{};
      int r = k;
      for (int c = 0; c < 4; ++c, r /= 3) dir[c] = (r % 3) - 1.0;
      if (k != 40) dirs.push_back(dir);
    }
    return dirs;
  }();
  double best = sign * oracle_value(m, x);
  int evals = 0;
  while (step > 1e-11 && evals < 400000) {
    bool moved = false;
    for (const auto& dir : stencil) {
      auto y = x;
      for (int c = 0; c < 4; ++c) y[c] += dir[c] * step;
      const double v = sign * oracle_value(m, y);
      ++evals;
      if (v > best) {
        best = v;
        x = y;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return sign * best;
}

}  // namespace detail

/// Independent oracle for 2x2: angle grid over both Bloch spheres, then
/// pattern-search refinement of the best and worst grid points.
inline Extrema brute_force_extrema(const BipartiteOperator& op, int grid_points = 16) {
  detail::require(op.dims() == Dims{2, 2}, ErrorKind::Dims,
                  "dims: brute-force oracle supports 2x2 only");
  detail::require(grid_points >= 8, ErrorKind::InvalidArgument, "grid_points must be >= 8");
  const Matrix& m = op.matrix();
  const int n = grid_points;
  const double dtheta = (std::numbers::pi / 2) / (n - 1);
  const double dphi = 2 * std::numbers::pi / n;

  struct Sample {
    double v;
    std::array<double, 4> x;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const std::array<double, 4> x{i * dtheta, j * dphi, k * dtheta, l * dphi};
          samples.push_back({detail::oracle_value(m, x), x});
        }
  constexpr std::size_t kRefine = 8;
  const std::size_t top = std::min(kRefine, samples.size());
  auto by_value = [](const Sample& a, const Sample& b) { return a.v > b.v; };
  Extrema out{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  std::partial_sort(samples.begin(), samples.begin() + top, samples.end(), by_value);
  for (std::size_t i = 0; i < top; ++i)
    out.max = std::max(out.max, detail::pattern_search(m, samples[i].x, dphi, 1.0));
  std::partial_sort(samples.begin(), samples.begin() + top, samples.end(),
                    [](const Sample& a, const Sample& b) { return a.v < b.v; });
  for (std::size_t i = 0; i < top; ++i)
    out.min = std::min(out.min, detail::pattern_search(m, samples[i].x, dphi, -1.0));
  return out;
}

struct Proposition1Report {
  double max_cross = 0.0;          // largest |psi_{k,0}|, |psi_{0,l}|
  double max_overlap = 0.0;        // largest overlap on a shared factor, distinct g
  double min_gram = 1.0;           // smallest Gram determinant, distinct g
  int shared_factor_pairs = 0;
  int distinct_pairs = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks the structural properties of a converged pair against a spectrum:
/// A|a0,b0> has no cross terms psi_{k,0}, psi_{0,l} in bases extending a0,
/// b0; pairs with different g sharing a factor are orthogonal on the other;
/// pairs with different g are linearly independent.
inline Proposition1Report check_proposition1(const BipartiteOperator& op,
                                             const SepEigenpair& pair,
                                             const SepSpectrum& spectrum,
                                             double distinct_tol = 1e-7) {
  constexpr double kCrossTol = 1e-8;
  constexpr double kOrthTol = 1e-8;
  constexpr double kGramTol = 1e-10;
  constexpr double kShareTol = 1e-9;

  Proposition1Report rep;
  const Dims& d = op.dims();
  const Matrix qa = detail::extend_basis(pair.a.coeffs());
  const Matrix qb = detail::extend_basis(pair.b.coeffs());
  const Vector v0 = kron(pair.a.coeffs(), pair.b.coeffs());
  const Vector psi = op.matrix() * v0;
  for (int k = 0; k < d.a; ++k) {
    for (int l = 0; l < d.b; ++l) {
      if ((k == 0) == (l == 0)) continue;
      const cplx c = kron(qa.col(k), qb.col(l)).dot(psi);
      rep.max_cross = std::max(rep.max_cross, std::abs(c));
    }
  }
  if (rep.max_cross >= kCrossTol)
    rep.violations.push_back("cross coefficient " + std::to_string(rep.max_cross));

  for (const auto& other : spectrum.pairs) {
    if (std::abs(other.g - pair.g) <= distinct_tol) continue;
    ++rep.distinct_pairs;
    const Vector v1 = kron(other.a.coeffs(), other.b.coeffs());
    const double gram = 1.0 - std::norm(v0.dot(v1));
    rep.min_gram = std::min(rep.min_gram, gram);
    if (gram <= kGramTol)
      rep.violations.push_back("linearly dependent pair at g=" + std::to_string(other.g));
    double overlap = -1.0;
    auto same_ray = [&](const Vector& x, const Vector& y) {
      return 1.0 - std::abs(x.dot(y)) < kShareTol;
    };
    if (same_ray(pair.b.coeffs(), other.b.coeffs()))
      overlap = std::abs(pair.a.coeffs().dot(other.a.coeffs()));
    else if (same_ray(pair.a.coeffs(), other.a.coeffs()))
      overlap = std::abs(pair.b.coeffs().dot(other.b.coeffs()));
    if (overlap >= 0.0) {
      ++rep.shared_factor_pairs;
      rep.max_overlap = std::max(rep.max_overlap, overlap);
      if (overlap >= kOrthTol)
        rep.violations.push_back("non-orthogonal shared-factor pair at g=" +
                                 std::to_string(other.g));
    }
  }
  return rep;
}

}  // namespace sepeig
