#pragma once

// Max-norm "spherical" grid of Hermitian test operators.
//
// Each upper-triangle component A_(r,c), r <= c, takes the value 0 or
// k * delta_r * exp(i j * delta_phi) for k = 1..n_r, j = 0..n_phi-1.  Diagonal
// components must be real, so their phase lattice is projected onto {0, pi}.
// The lower triangle is the Hermitian completion.  Grid points are enumerated
// in mixed radix with the first component most significant; raw index 0 is
// the zero operator and is skipped, so grid index i is raw index i + 1.
// Every yielded operator is divided by its max-norm.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sepeig/core.hpp"
#include "sepeig/parallel.hpp"
#include "sepeig/witness.hpp"
#include "sepeig/solver.hpp"

namespace sepeig {

struct GridSpec {
  Dims dims{2, 2};
  double delta_r = 1.0;
  double delta_phi = 2 * std::numbers::pi;
  std::uint64_t max_count = 1'000'000;

  double epsilon() const { return std::hypot(delta_r, delta_phi); }

  void validate() const {
    detail::require(delta_r > 0.0 && delta_r <= 1.0, ErrorKind::InvalidArgument,
                    "delta_r must lie in (0, 1]");
    detail::require(delta_phi > 0.0 && delta_phi <= 2 * std::numbers::pi + 1e-12,
                    ErrorKind::InvalidArgument, "delta_phi must lie in (0, 2 pi]");
  }
};

class OperatorGrid {
 public:
  static constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

  explicit OperatorGrid(GridSpec spec) : spec_(spec) {
    spec_.validate();
    n_r_ = static_cast<int>(std::floor(1.0 / spec_.delta_r + 1e-9));
    n_phi_ = static_cast<int>(std::ceil(2 * std::numbers::pi / spec_.delta_phi - 1e-9));
    signs_.push_back(1.0);
    for (int j = 1; j < n_phi_; ++j) {
      const double phi = j * spec_.delta_phi;
      if (std::abs(phi - std::numbers::pi) < std::numbers::pi / 2) {
        signs_.push_back(-1.0);
        break;
      }
    }
    const int side = spec_.dims.total();
    for (int r = 0; r < side; ++r)
      for (int c = r; c < side; ++c) components_.push_back({r, c});

    const std::uint64_t diag_opts = 1 + static_cast<std::uint64_t>(n_r_) * signs_.size();
    const std::uint64_t off_opts = 1 + static_cast<std::uint64_t>(n_r_) * n_phi_;
    std::uint64_t raw = 1;
    for (const auto& comp : components_) {
      const std::uint64_t opts = comp.first == comp.second ? diag_opts : off_opts;
      radix_.push_back(opts);
      if (raw != kSaturated) raw = raw > kSaturated / opts ? kSaturated : raw * opts;
    }
    size_ = raw == kSaturated ? kSaturated : raw - 1;
  }

  const GridSpec& spec() const noexcept { return spec_; }
  /// Number of nonzero grid operators (saturates at 2^64 - 1).
  std::uint64_t size() const noexcept { return size_; }
  int magnitude_steps() const noexcept { return n_r_; }
  int phase_steps() const noexcept { return n_phi_; }
  int diagonal_signs() const noexcept { return static_cast<int>(signs_.size()); }

  void check_cap() const {
    detail::require(size_ <= spec_.max_count, ErrorKind::CapExceeded,
                    "grid has " + (size_ == kSaturated ? std::string(">= 2^64") : std::to_string(size_)) +
                        " operators, above the cap of " + std::to_string(spec_.max_count));
  }

  /// Per-component option digits of grid index i (0 = zero component).
  std::vector<std::uint64_t> digits(std::uint64_t index) const {
    detail::require(index < size_, ErrorKind::InvalidArgument, "grid index out of range");
    std::uint64_t raw = index + 1;
    std::vector<std::uint64_t> out(components_.size());
    for (std::size_t k = components_.size(); k-- > 0;) {
      out[k] = raw % radix_[k];
      raw /= radix_[k];
    }
    return out;
  }

  std::optional<std::uint64_t> index_of_digits(const std::vector<std::uint64_t>& dig) const {
    if (dig.size() != components_.size()) return std::nullopt;
    std::uint64_t raw = 0;
    for (std::size_t k = 0; k < dig.size(); ++k) {
      if (dig[k] >= radix_[k]) return std::nullopt;
      if (raw > (kSaturated - dig[k]) / radix_[k]) return std::nullopt;
      raw = raw * radix_[k] + dig[k];
    }
    if (raw == 0) return std::nullopt;
    return raw - 1;
  }

  /// Unnormalized lattice value of component k for option digit o.
  cplx component_value(std::size_t k, std::uint64_t o) const {
    if (o == 0) return 0.0;
    const auto& comp = components_[k];
    if (comp.first == comp.second) {
      const std::uint64_t mag = (o - 1) / signs_.size() + 1;
      const double sign = signs_[(o - 1) % signs_.size()];
      return sign * (static_cast<double>(mag) * spec_.delta_r);
    }
    const std::uint64_t mag = (o - 1) / static_cast<std::uint64_t>(n_phi_) + 1;
    const std::uint64_t ph = (o - 1) % static_cast<std::uint64_t>(n_phi_);
    return std::polar(static_cast<double>(mag) * spec_.delta_r,
                      static_cast<double>(ph) * spec_.delta_phi);
  }

  /// The grid operator at `index`, normalized to max-norm 1.
  BipartiteOperator at(std::uint64_t index) const {
    const auto dig = digits(index);
    const int side = spec_.dims.total();
    Matrix m = Matrix::Zero(side, side);
    for (std::size_t k = 0; k < components_.size(); ++k) {
      const auto [r, c] = components_[k];
      const cplx v = component_value(k, dig[k]);
      m(r, c) = v;
      if (r != c) m(c, r) = std::conj(v);
    }
    m /= m.cwiseAbs().maxCoeff();
    return {spec_.dims, std::move(m)};
  }

  /// Index in `finer` of the same lattice point, when `finer` contains it.
  std::optional<std::uint64_t> map_to(const OperatorGrid& finer, std::uint64_t index) const {
    if (!(finer.spec_.dims == spec_.dims)) return std::nullopt;
    const auto dig = digits(index);
    std::vector<std::uint64_t> out(dig.size());
    for (std::size_t k = 0; k < dig.size(); ++k) {
      const cplx v = component_value(k, dig[k]);
      bool found = false;
      for (std::uint64_t o = 0; o < finer.radix_[k] && !found; ++o) {
        if (finer.component_value(k, o) == v) {
          out[k] = o;
          found = true;
        }
      }
      if (!found) return std::nullopt;
    }
    return finer.index_of_digits(out);
  }

  /// Calls fn(index, op) for index in [first, size()) in order; fn returns
  /// false to stop.  Refuses grids above the cap.
  void generate(std::uint64_t first,
                const std::function<bool(std::uint64_t, const BipartiteOperator&)>& fn) const {
    check_cap();
    for (std::uint64_t i = first; i < size_; ++i)
      if (!fn(i, at(i))) return;
  }

 private:
  GridSpec spec_;
  int n_r_ = 1;
  int n_phi_ = 1;
  std::vector<double> signs_;
  std::vector<std::pair<int, int>> components_;
  std::vector<std::uint64_t> radix_;
  std::uint64_t size_ = 0;
};

struct ScanRecord {
  std::uint64_t index;
  double margin;   // tr(rho A_i) - f_AB(A_i)
  double f_value;  // f_AB(A_i)
};

struct ScanReport {
  std::uint64_t first = 0;
  std::uint64_t scanned = 0;
  std::vector<ScanRecord> detections;
  double best_margin = -std::numeric_limits<double>::infinity();
  std::uint64_t best_index = 0;
  int failures = 0;  // operators whose solve did not converge
};

namespace detail {

inline void merge_record(ScanReport& rep, std::uint64_t index, std::optional<ScanRecord> rec,
                         const std::function<void(const ScanRecord&)>& on_detection) {
  ++rep.scanned;
  if (!rec) {
    ++rep.failures;
    return;
  }
  if (rec->margin > rep.best_margin) {
    rep.best_margin = rec->margin;
    rep.best_index = index;
  }
  if (rec->margin > kDecisionThreshold) {
    rep.detections.push_back(*rec);
    if (on_detection) on_detection(*rec);
  }
}

}  // namespace detail

/// Evaluates every grid operator from `first` on (or the explicit `indices`
/// when given) against rho.  Work is done in parallel blocks and merged in
/// index order; `on_detection` sees each detection as soon as its block is
/// merged, so interrupted scans keep the records already emitted.
inline ScanReport scan(const DensityOperator& rho, const OperatorGrid& grid,
                       const SolverConfig& cfg = {}, std::uint64_t first = 0,
                       const std::function<void(const ScanRecord&)>& on_detection = {},
                       const std::vector<std::uint64_t>* indices = nullptr) {
  detail::require(rho.dims() == grid.spec().dims, ErrorKind::Dims, "dims: state and grid differ");
  if (!indices) grid.check_cap();
  const std::uint64_t count =
      indices ? indices->size() : (first < grid.size() ? grid.size() - first : 0);
  SolverConfig inner = cfg;
  inner.threads = 1;
  const int workers = worker_count(cfg.threads);
  constexpr std::uint64_t kBlock = 512;

  ScanReport rep;
  rep.first = first;
  std::vector<std::optional<ScanRecord>> block;
  for (std::uint64_t start = 0; start < count; start += kBlock) {
    const std::uint64_t n = std::min(kBlock, count - start);
    block.assign(n, std::nullopt);
    parallel_for(n, workers, [&](std::size_t j) {
      const std::uint64_t idx = indices ? (*indices)[start + j] : first + start + j;
      const BipartiteOperator a = grid.at(idx);
      try {
        const double f = f_ab(a, inner);
        block[j] = ScanRecord{idx, expectation(a, rho) - f, f};
      } catch (const NoConvergence&) {
      }
    });
    for (std::uint64_t j = 0; j < n; ++j) {
      const std::uint64_t idx = indices ? (*indices)[start + j] : first + start + j;
      detail::merge_record(rep, idx, block[j], on_detection);
    }
  }
  return rep;
}

}  // namespace sepeig
