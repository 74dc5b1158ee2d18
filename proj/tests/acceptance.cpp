// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sepeig/sepeig.hpp"

using namespace sepeig;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> run;
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

SolverConfig iterative() {
  SolverConfig cfg;
  cfg.interior = false;
  return cfg;
}

Outcome ac1() {
  const BipartiteOperator a = bell_phi().projector();
  const double analytic = f_ab(a);
  const double iter = solve_sepeig(a, iterative()).sup_g;
  const double err = std::max(std::abs(analytic - 0.5), std::abs(iter - 0.5));
  return {err < 1e-9, "analytic " + num(analytic) + ", iterative " + num(iter) + ", err " + num(err)};
}

Outcome ac2() {
  double worst = 0.0;
  int count = 0;
  for (const Dims d : {Dims{2, 2}, Dims{3, 3}, Dims{4, 4}}) {
    for (int i = 0; i < 200; ++i) {
      Rng rng = stream_rng(2000 + d.a, static_cast<std::uint64_t>(i));
      const PureBipartiteState psi(d, haar_vector(d.total(), rng));
      const double m0 = schmidt(psi).coefficients.front();
      SolverConfig cfg = iterative();
      cfg.seed = static_cast<std::uint64_t>(i);
      const double sup = solve_sepeig(psi.projector(), cfg).sup_g;
      worst = std::max(worst, std::abs(sup - m0 * m0));
      ++count;
    }
  }
  return {worst < 1e-8, std::to_string(count) + " states, max |sup_g - m_0^2| = " + num(worst)};
}

Outcome ac3() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng rng = stream_rng(3000, static_cast<std::uint64_t>(i));
    const BipartiteOperator a = random_hermitian({2, 2}, rng);
    const Extrema oracle = brute_force_extrema(a);
    const SepSpectrum s = solve_sepeig(a, iterative());
    worst = std::max({worst, std::abs(oracle.max - s.sup_g), std::abs(oracle.min - s.inf_g)});
  }
  return {worst < 1e-4, "50 operators, max deviation from oracle " + num(worst)};
}

Outcome ac4() {
  double worst = 0.0;
  for (const Dims d : {Dims{2, 2}, Dims{3, 3}}) {
    for (int i = 0; i < 50; ++i) {
      Rng rng = stream_rng(4000 + d.a, static_cast<std::uint64_t>(i));
      const BipartiteOperator a = random_hermitian(d, rng);
      worst = std::max(worst, std::abs(f_ab(partial_transpose(a)) - f_ab(a)));
    }
  }
  return {worst < 1e-7, "100 operators, max |f(A^PT) - f(A)| = " + num(worst)};
}

Outcome ac5() {
  const BipartiteOperator a = embedded_bell_projector();
  const Witness w = build_witness(a);
  bool ok = std::abs(w.f_value - 0.5) < 1e-12;
  std::string detail;
  for (double x : {0.4, 0.6, 0.8}) {
    const double eta0 = coherent_mixture_threshold(x, x);
    constexpr double kStep = 5e-4;
    double flip = std::nan("");
    bool monotone = true;
    bool prev = false;
    for (double eta = eta0 - 0.05; eta <= eta0 + 0.05 + 1e-12; eta += kStep) {
      const bool det = test_upper(rho_mix(x, x, eta), w).kind == VerdictKind::Entangled;
      if (det && !prev && std::isnan(flip)) flip = eta;
      if (prev && !det) monotone = false;
      prev = det;
    }
    // the flip lies in (flip - kStep, flip]
    const double err = std::isnan(flip) ? 1.0 : std::abs(flip - kStep / 2 - eta0) + kStep / 2;
    ok = ok && monotone && err <= 0.002;
    detail += "a=b=" + num(x) + ": threshold " + num(eta0) + ", flip " + num(flip) + "; ";
  }
  return {ok, detail};
}

Outcome ac6() {
  int entangled = 0;
  double worst = -std::numeric_limits<double>::infinity();
  int verdicts = 0;
  for (const Dims d : {Dims{2, 2}, Dims{3, 3}}) {
    std::vector<Witness> ws;
    for (int k = 0; k < 50; ++k) {
      Rng rng = stream_rng(6000 + d.a, static_cast<std::uint64_t>(k));
      ws.push_back(build_witness(random_hermitian(d, rng)));
    }
    for (int s = 0; s < 500; ++s) {
      const DensityOperator rho =
          random_separable(d, 1 + s % (d.total() + 1), 6100 + 1000 * static_cast<std::uint64_t>(d.a) + s);
      for (const auto& w : ws) {
        const Verdict v = test_upper(rho, w);
        worst = std::max(worst, v.margin);
        if (v.kind == VerdictKind::Entangled) ++entangled;
        ++verdicts;
      }
    }
  }
  return {entangled == 0, std::to_string(verdicts) + " verdicts, " + std::to_string(entangled) +
                              " Entangled, max margin " + num(worst)};
}

Outcome ac7() {
  const std::vector<std::pair<double, double>> pairs{{-2.0, 0.1}, {-0.5, 0.5}, {0.0, 1.0}, {0.75, 2.0}, {3.0, 7.5}};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Rng rng = stream_rng(7000, static_cast<std::uint64_t>(i));
    const Dims d = i % 2 ? Dims{2, 3} : Dims{2, 2};
    const BipartiteOperator a = random_hermitian(d, rng);
    const double f = f_ab(a);
    for (const auto& [kappa, gamma] : pairs) {
      worst = std::max(worst, std::abs(f_ab(a.shifted(kappa)) - (f + kappa)));
      worst = std::max(worst, std::abs(f_ab(a * gamma) - gamma * f));
    }
  }
  return {worst < 1e-8, "20 operators x 5 (kappa, gamma), max deviation " + num(worst)};
}

Outcome ac8() {
  int pairs = 0, failures = 0;
  double max_cross = 0.0, min_gram = 1.0;
  std::string first;
  for (int i = 0; i < 50; ++i) {
    Rng rng = stream_rng(8000, static_cast<std::uint64_t>(i));
    const Dims d = i % 3 == 0 ? Dims{2, 2} : i % 3 == 1 ? Dims{2, 3} : Dims{3, 3};
    const BipartiteOperator a = random_hermitian(d, rng);
    const SepSpectrum s = solve_sepeig(a);
    for (const auto& p : s.pairs) {
      const auto rep = check_proposition1(a, p, s);
      ++pairs;
      max_cross = std::max(max_cross, rep.max_cross);
      min_gram = std::min(min_gram, rep.min_gram);
      if (!rep.ok()) {
        ++failures;
        if (first.empty()) first = rep.violations.front();
      }
    }
  }
  return {failures == 0, std::to_string(pairs) + " pairs, max cross " + num(max_cross) +
                             ", min Gram " + num(min_gram) + ", failures " +
                             std::to_string(failures) + (first.empty() ? "" : " (" + first + ")")};
}

Outcome ac9() {
  const DensityOperator tiles = tiles_upb_state();
  const double lmin = partial_transpose(tiles.op()).min_eigenvalue();
  bool ok = lmin >= -1e-10 && npt_check(tiles).kind == VerdictKind::PPT;

  BoundSearch search;
  search.random_candidates = 1000;
  search.seed = 9;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto res = bound_check(random_separable({3, 3}, 4 + 2 * static_cast<int>(s), 9000 + s),
                                 {tiles_upb_projector()}, search);
    ok = ok && res.verdict.kind == VerdictKind::Inconclusive;
    for (double m : res.margins) worst = std::max(worst, m);
  }
  ok = ok && worst <= 1e-8;

  // Best effort: random f^dag f candidates only, documented budget.
  BoundSearch budget;
  budget.random_candidates = 10000;
  budget.seed = 0;
  const auto random_only = bound_check(tiles, {}, budget);
  const auto structured = bound_check(tiles, {tiles_upb_projector()}, BoundSearch{0, 0, 16, 256});
  return {ok, "tiles lambda_min(rho^PT) " + num(lmin) + ", separable max margin " + num(worst) +
                  "; best effort: 10^4 random candidates (seed 0) -> " +
                  to_string(random_only.verdict.kind) + " (best margin " + num(random_only.best_margin) +
                  "), UPB projector candidate -> " + to_string(structured.verdict.kind) +
                  " (margin " + num(structured.verdict.margin) + ")"};
}

Outcome ac10() {
  const DensityOperator bell(bell_phi());
  GridSpec coarse_spec;
  coarse_spec.delta_r = 1.0;
  coarse_spec.delta_phi = std::numbers::pi;
  GridSpec fine_spec = coarse_spec;
  fine_spec.delta_r /= 2;
  fine_spec.delta_phi /= 2;
  fine_spec.max_count = 0;  // never enumerated; only mapped indices are evaluated
  const OperatorGrid coarse(coarse_spec), fine(fine_spec);

  const ScanReport rep = scan(bell, coarse);
  std::vector<std::uint64_t> mapped;
  bool all_mapped = true;
  for (const auto& r : rep.detections) {
    const auto j = coarse.map_to(fine, r.index);
    if (!j) all_mapped = false;
    else mapped.push_back(*j);
  }
  const ScanReport refined = scan(bell, fine, {}, 0, {}, &mapped);
  bool kept = all_mapped && refined.detections.size() == rep.detections.size();
  for (std::size_t i = 0; kept && i < refined.detections.size(); ++i)
    kept = std::abs(refined.detections[i].margin - rep.detections[i].margin) < 1e-8;
  const bool ok = !rep.detections.empty() && rep.best_margin >= 0.4 && kept && rep.failures == 0;
  return {ok, std::to_string(rep.scanned) + " coarse operators, " +
                  std::to_string(rep.detections.size()) + " detections, best margin " +
                  num(rep.best_margin) + "; refined grid keeps " +
                  std::to_string(refined.detections.size()) + "/" +
                  std::to_string(rep.detections.size())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "Bell-state f-value", 1.0, ac1},
      {"AC2", "rank-one oracle equivalence", 30.0, ac2},
      {"AC3", "brute-force agreement", 120.0, ac3},
      {"AC4", "PT invariance", 0.0, ac4},
      {"AC5", "coherent-mixture threshold", 60.0, ac5},
      {"AC6", "soundness", 300.0, ac6},
      {"AC7", "shift/scale covariance", 0.0, ac7},
      {"AC8", "structural property suite", 0.0, ac8},
      {"AC9", "bound-entanglement pipeline", 0.0, ac9},
      {"AC10", "grid scan", 0.0, ac10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += " [over time limit " + num(c.time_limit) + " s]";
    }
    if (!o.pass) ++failed;
    std::printf("%-4s %s  %s: %s (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
