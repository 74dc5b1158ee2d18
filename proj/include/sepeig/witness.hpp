#pragma once

// Optimal witnesses W = f_AB(A) 1 - A and the entanglement tests built on them.
//
//   upper test:  f_AB(A) < tr(rho A)
//   lower test:  inf <a,b|A|a,b> > tr(rho A)       (upper test for -A)
//   NPT test:    lambda_min(rho^PT) < 0
//   bound test:  rho PPT and inf <a,b|C|a,b> > tr(rho C^PT) for some C >= 0

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepeig/core.hpp"
#include "sepeig/parallel.hpp"
#include "sepeig/random.hpp"
#include "sepeig/solver.hpp"
#include "sepeig/states.hpp"

namespace sepeig {

/// Margins at or below this are treated as zero.
inline constexpr double kDecisionThreshold = 1e-9;

struct Witness {
  BipartiteOperator op;      // f_value * 1 - source
  double f_value;            // f_AB(source)
  BipartiteOperator source;  // the test operator A
  bool optimal = true;
};

enum class VerdictKind { Entangled, NotDetected, NPT, PPT, BoundEntangled, Inconclusive };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Entangled: return "Entangled";
    case VerdictKind::NotDetected: return "NotDetected";
    case VerdictKind::NPT: return "NPT";
    case VerdictKind::PPT: return "PPT";
    case VerdictKind::BoundEntangled: return "BoundEntangled";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double margin = 0.0;
  std::optional<Witness> witness_used;
  std::string detail;

  bool detected() const {
    return kind == VerdictKind::Entangled || kind == VerdictKind::BoundEntangled;
  }
};

inline Witness witness_from_f(const BipartiteOperator& a, double f) {
  return {a.shifted(-f) * -1.0, f, a, true};
}

inline Witness build_witness(const BipartiteOperator& a, const SolverConfig& cfg = {}) {
  return witness_from_f(a, f_ab(a, cfg));
}

/// Upper test with a precomputed witness; margin = tr(rho A) - f_AB(A).
inline Verdict test_upper(const DensityOperator& rho, const Witness& w) {
  const double margin = expectation(w.source, rho) - w.f_value;
  Verdict v;
  v.margin = margin;
  v.witness_used = w;
  if (margin > kDecisionThreshold) {
    v.kind = VerdictKind::Entangled;
    v.detail = "tr(rho A) exceeds f_AB(A) = " + std::to_string(w.f_value);
  } else {
    v.kind = VerdictKind::NotDetected;
    v.detail = "tr(rho A) <= f_AB(A) = " + std::to_string(w.f_value) +
               "; this does not imply separability";
  }
  return v;
}

inline Verdict test_upper(const DensityOperator& rho, const BipartiteOperator& a,
                          const SolverConfig& cfg = {}) {
  detail::require(rho.dims() == a.dims(), ErrorKind::Dims, "dims: state and operator differ");
  try {
    return test_upper(rho, build_witness(a, cfg));
  } catch (const NoConvergence& e) {
    Verdict v;
    v.kind = VerdictKind::Inconclusive;
    v.detail = e.what();
    return v;
  }
}

/// Lower test; margin = inf <a,b|A|a,b> - tr(rho A).
inline Verdict test_lower(const DensityOperator& rho, const BipartiteOperator& a,
                          const SolverConfig& cfg = {}) {
  Verdict v = test_upper(rho, -a, cfg);
  if (v.witness_used)
    v.detail = "lower test: inf g = " + std::to_string(-v.witness_used->f_value) +
               (v.kind == VerdictKind::Entangled ? " exceeds tr(rho A)" : " <= tr(rho A)");
  return v;
}

/// NPT if lambda_min(rho^PT) < -1e-10, with margin |lambda_min|.
inline Verdict npt_check(const DensityOperator& rho) {
  constexpr double kNptTol = 1e-10;
  const double lmin = partial_transpose(rho.op()).min_eigenvalue();
  Verdict v;
  if (lmin < -kNptTol) {
    v.kind = VerdictKind::NPT;
    v.margin = -lmin;
    v.detail = "lambda_min(rho^PT) = " + std::to_string(lmin);
  } else {
    v.kind = VerdictKind::PPT;
    v.margin = std::max(0.0, -lmin);
    v.detail = "lambda_min(rho^PT) = " + std::to_string(lmin);
  }
  return v;
}

struct BoundSearch {
  /// Random candidates f^dag f drawn in addition to user-supplied ones.
  int random_candidates = 10000;
  std::uint64_t seed = 0;
  /// Starts for the first inf estimate of each candidate.
  int screen_starts = 16;
  /// Starts for re-checking a candidate that passes the screen.
  int confirm_starts = 256;
};

struct BoundCheckResult {
  Verdict verdict;
  /// margin inf g_C - tr(rho C^PT) per candidate, user candidates first
  std::vector<double> margins;
  int candidates_tried = 0;
  std::optional<int> succeeding_index;
  std::optional<BipartiteOperator> succeeding;
  double best_margin = -std::numeric_limits<double>::infinity();
};

/// Searches for C >= 0 with inf <a,b|C|a,b> > tr(rho C^PT) on a PPT state.
///
/// The separable infimum found by multistart is an upper estimate, so a
/// candidate passing the screen is re-solved with more starts and a fresh
/// seed, and the smaller infimum is used.  Exhausting the budget yields
/// Inconclusive, never a separability claim.
inline BoundCheckResult bound_check(const DensityOperator& rho,
                                    const std::vector<BipartiteOperator>& candidates,
                                    const BoundSearch& search = {}, const SolverConfig& cfg = {}) {
  const Verdict npt = npt_check(rho);
  detail::require(npt.kind == VerdictKind::PPT, ErrorKind::NotPPT,
                  "state is NPT (margin " + std::to_string(npt.margin) + "); use npt_check");
  for (const auto& c : candidates) {
    detail::require(c.dims() == rho.dims(), ErrorKind::Dims, "dims: candidate and state differ");
    detail::require(c.min_eigenvalue() >= -1e-10, ErrorKind::InvalidArgument,
                    "bound_check candidates must be positive semidefinite");
  }
  detail::require(search.random_candidates >= 0 && search.screen_starts >= 1 &&
                      search.confirm_starts >= 1,
                  ErrorKind::InvalidArgument, "invalid bound search budget");

  const std::size_t total = candidates.size() + static_cast<std::size_t>(search.random_candidates);
  auto candidate = [&](std::size_t i) {
    if (i < candidates.size()) return candidates[i];
    Rng rng = stream_rng(search.seed, 0x626f756e64, i - candidates.size());
    return random_positive(rho.dims(), rng);
  };

  SolverConfig screen = cfg;
  screen.starts = search.screen_starts;
  screen.threads = 1;
  SolverConfig confirm = cfg;
  confirm.starts = search.confirm_starts;
  confirm.seed = splitmix64(cfg.seed ^ 0xc0ff1e);
  confirm.threads = 1;

  BoundCheckResult res;
  res.margins.assign(total, 0.0);
  parallel_for(total, worker_count(cfg.threads), [&](std::size_t i) {
    const BipartiteOperator c = candidate(i);
    const double value = expectation(partial_transpose(c), rho);
    double inf = inf_ab(c, screen);
    if (inf - value > kDecisionThreshold) inf = std::min(inf, inf_ab(c, confirm));
    res.margins[i] = inf - value;
  });
  res.candidates_tried = static_cast<int>(total);

  for (std::size_t i = 0; i < total; ++i) {
    if (res.margins[i] > res.best_margin) res.best_margin = res.margins[i];
    if (!res.succeeding_index && res.margins[i] > kDecisionThreshold)
      res.succeeding_index = static_cast<int>(i);
  }

  Verdict& v = res.verdict;
  if (res.succeeding_index) {
    const BipartiteOperator c = candidate(static_cast<std::size_t>(*res.succeeding_index));
    const double m = res.margins[static_cast<std::size_t>(*res.succeeding_index)];
    const double inf = m + expectation(partial_transpose(c), rho);
    v.kind = VerdictKind::BoundEntangled;
    v.margin = m;
    // W = C^PT - inf g_C * 1, the optimal witness of A = -C^PT.
    v.witness_used = witness_from_f(-partial_transpose(c), -inf);
    v.detail = "PPT state violates inf g_C > tr(rho C^PT) for candidate " +
               std::to_string(*res.succeeding_index);
    res.succeeding = c;
  } else {
    v.kind = VerdictKind::Inconclusive;
    v.margin = res.best_margin;
    v.detail = "no candidate among " + std::to_string(total) +
               " detected entanglement; this does not imply separability";
  }
  return res;
}

struct PartialPositivityReport {
  bool passed = false;
  double min_sampled = std::numeric_limits<double>::infinity();  // min tr(sigma W), sampled
  double separable_min = 0.0;                                     // inf <a,b|W|a,b> = -f_AB(-W)
  double spectral_norm = 0.0;
  int samples = 0;
};

/// Checks tr(sigma W) >= 0 on separable states: Monte Carlo over random
/// separable mixtures plus the exact separable infimum of W.
inline PartialPositivityReport validate_partial_positive(const BipartiteOperator& w, int samples,
                                                         std::uint64_t seed = 0,
                                                         const SolverConfig& cfg = {}) {
  constexpr double kTol = 1e-8;
  PartialPositivityReport rep;
  rep.samples = samples;
  rep.spectral_norm = w.spectral_norm();
  const Dims& d = w.dims();
  for (int s = 0; s < samples; ++s) {
    Rng rng = stream_rng(seed, 0x70706f73, static_cast<std::uint64_t>(s));
    const int terms = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d.total()));
    const DensityOperator sigma = random_separable(d, terms, rng);
    rep.min_sampled = std::min(rep.min_sampled, expectation(w, sigma));
  }
  rep.separable_min = inf_ab(w, cfg);
  rep.passed = rep.min_sampled >= -kTol && rep.separable_min >= -kTol;
  return rep;
}

}  // namespace sepeig
