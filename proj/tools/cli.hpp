#pragma once

// Command-line front end.  Exit codes: 0 ran (nothing detected), 1 input
// error, 2 numerical failure, 3 entanglement detected.

#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sepeig/sepeig.hpp"

namespace sepeig::cli {

enum ExitCode : int { kRan = 0, kInputError = 1, kNumericalFailure = 2, kDetected = 3 };

using io::json;

struct RunConfig {
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int starts = 64;
  std::string output;
  std::string format = "json";

  json header() const {
    json j;
    j["seed"] = seed;
    j["tol"] = tol;
    j["starts"] = starts;
    j["format"] = format;
    return j;
  }

  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.starts = starts;
    cfg.dedup_tol = std::max(cfg.dedup_tol, 10.0 * tol);
    return cfg;
  }
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

inline std::string header_text(const RunConfig& rc) {
  return "# seed=" + std::to_string(rc.seed) + " tol=" + fmt(rc.tol) +
         " starts=" + std::to_string(rc.starts);
}

/// JSON object with the run header first, then the payload's keys.
inline json with_header(const RunConfig& rc, const json& payload) {
  json j;
  j["run"] = rc.header();
  for (const auto& [k, v] : payload.items()) j[k] = v;
  return j;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      detail_require_open(path);
    }
    out_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& os() { return *out_; }

 private:
  void detail_require_open(const std::string& path) {
    if (!file_) throw Error(ErrorKind::Parse, "cannot open output " + path);
  }
  std::ofstream file_;
  std::ostream* out_;
};

inline void emit_json(const RunConfig& rc, std::ostream& out, const json& payload) {
  Sink sink(rc.output, out);
  sink.os() << with_header(rc, payload).dump() << "\n";
}

inline void emit_text(const RunConfig& rc, std::ostream& out, const std::string& body) {
  Sink sink(rc.output, out);
  sink.os() << header_text(rc) << "\n" << body;
}

inline int verdict_exit(const Verdict& v) {
  if (v.detected() || v.kind == VerdictKind::NPT) return kDetected;
  return kRan;
}

inline void emit_verdict(const RunConfig& rc, std::ostream& out, const Verdict& v) {
  if (rc.format == "text") {
    emit_text(rc, out, std::string(to_string(v.kind)) + " margin=" + fmt(v.margin) + "\n" +
                           v.detail + "\n");
  } else {
    emit_json(rc, out, io::verdict_to_json(v));
  }
}

}  // namespace detail

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability eigenvalue solver and entanglement tests"};
  app.require_subcommand(1);
  RunConfig rc;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", rc.seed, "random seed");
    sub->add_option("--tol", rc.tol, "solver tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--starts", rc.starts, "random starts per branch")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", rc.output, "output path (default stdout)");
    sub->add_option("--format", rc.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  std::string op_file, state_file;

  auto* sepeig_cmd = app.add_subcommand("sepeig", "solve the separability eigenvalue equations");
  bool no_interior = false;
  sepeig_cmd->add_option("operator", op_file, "operator JSON file")->required();
  sepeig_cmd->add_flag("--no-interior", no_interior, "only the sup and inf branches");
  add_common(sepeig_cmd);

  auto* test_cmd = app.add_subcommand("test", "entanglement test f_AB(A) < tr(rho A)");
  bool lower = false;
  test_cmd->add_option("state", state_file, "state JSON file")->required();
  test_cmd->add_option("operator", op_file, "operator JSON file")->required();
  test_cmd->add_flag("--lower", lower, "use inf g > tr(rho A) instead");
  add_common(test_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "optimal witness f_AB(A) 1 - A");
  witness_cmd->add_option("operator", op_file, "operator JSON file")->required();
  add_common(witness_cmd);

  auto* pt_cmd = app.add_subcommand("pt", "partial transpose on subsystem B");
  pt_cmd->add_option("operator", op_file, "operator JSON file")->required();
  add_common(pt_cmd);

  auto* npt_cmd = app.add_subcommand("npt", "negativity of the partial transpose");
  npt_cmd->add_option("state", state_file, "state JSON file")->required();
  add_common(npt_cmd);

  auto* bound_cmd = app.add_subcommand("bound", "PPT bound-entanglement search");
  std::vector<std::string> candidate_files;
  BoundSearch search;
  bound_cmd->add_option("state", state_file, "state JSON file")->required();
  bound_cmd->add_option("--candidate", candidate_files, "positive candidate operator files");
  bound_cmd->add_option("--budget", search.random_candidates, "random f^dag f candidates")
      ->check(CLI::NonNegativeNumber);
  bound_cmd->add_option("--candidate-seed", search.seed, "seed for random candidates");
  add_common(bound_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "scan a max-norm grid of test operators");
  GridSpec grid_spec;
  std::uint64_t resume_from = 0;
  scan_cmd->add_option("state", state_file, "state JSON file")->required();
  scan_cmd->add_option("--delta-r", grid_spec.delta_r, "magnitude step");
  scan_cmd->add_option("--delta-phi", grid_spec.delta_phi, "phase step");
  scan_cmd->add_option("--cap", grid_spec.max_count, "maximal grid size");
  scan_cmd->add_option("--resume-from", resume_from, "first grid index");
  add_common(scan_cmd);

  auto* gen_cmd = app.add_subcommand("gen-state", "write a standard state");
  std::string kind;
  double p = 1.0, eta = 0.5;
  double alpha_re = 0.5, alpha_im = 0.0, beta_re = 0.5, beta_im = 0.0;
  int n_max = 12, dim_a = 2, dim_b = 2, terms = 4;
  gen_cmd->add_option("kind", kind, "state kind")
      ->required()
      ->check(CLI::IsMember({"bell", "bell-plus", "werner", "chi-minus", "rho-mix",
                             "random-product", "random-separable", "tiles-upb", "identity"}));
  gen_cmd->add_option("--p", p, "Werner weight");
  gen_cmd->add_option("--eta", eta, "rho-mix weight");
  gen_cmd->add_option("--alpha-re", alpha_re);
  gen_cmd->add_option("--alpha-im", alpha_im);
  gen_cmd->add_option("--beta-re", beta_re);
  gen_cmd->add_option("--beta-im", beta_im);
  gen_cmd->add_option("--n-max", n_max, "Fock truncation");
  gen_cmd->add_option("--dim-a", dim_a);
  gen_cmd->add_option("--dim-b", dim_b);
  gen_cmd->add_option("--terms", terms, "random-separable mixture size");
  add_common(gen_cmd);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kRan;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*sepeig_cmd) {
      const BipartiteOperator op = io::operator_from_json(io::read_file(op_file));
      SolverConfig cfg = rc.solver();
      cfg.interior = !no_interior;
      const SepSpectrum s = solve_sepeig(op, cfg);
      if (rc.format == "text") {
        std::string body = "sup_g=" + detail::fmt(s.sup_g) + " inf_g=" + detail::fmt(s.inf_g) +
                           " converged_fraction=" + detail::fmt(s.converged_fraction) + "\n";
        for (const auto& pr : s.pairs)
          body += "g=" + detail::fmt(pr.g) + " residual=" + detail::fmt(pr.residual) + "\n";
        detail::emit_text(rc, out, body);
      } else {
        detail::emit_json(rc, out, io::spectrum_to_json(s));
      }
      return kRan;
    }
    if (*test_cmd) {
      const DensityOperator rho = io::density_from_json(io::read_file(state_file));
      const BipartiteOperator op = io::operator_from_json(io::read_file(op_file));
      const SolverConfig cfg = rc.solver();
      const Verdict v = lower ? test_lower(rho, op, cfg) : test_upper(rho, op, cfg);
      detail::emit_verdict(rc, out, v);
      if (v.kind == VerdictKind::Inconclusive) return kNumericalFailure;
      return detail::verdict_exit(v);
    }
    if (*witness_cmd) {
      const BipartiteOperator op = io::operator_from_json(io::read_file(op_file));
      const Witness w = build_witness(op, rc.solver());
      const double lmin = w.op.min_eigenvalue();
      if (rc.format == "text") {
        detail::emit_text(rc, out, "f_value=" + detail::fmt(w.f_value) +
                                       " min_eigenvalue=" + detail::fmt(lmin) + "\n");
      } else {
        json payload = io::operator_to_json(w.op);
        payload["f_value"] = w.f_value;
        payload["min_eigenvalue"] = lmin;
        detail::emit_json(rc, out, payload);
      }
      return kRan;
    }
    if (*pt_cmd) {
      const BipartiteOperator op = io::operator_from_json(io::read_file(op_file));
      detail::emit_json(rc, out, io::operator_to_json(partial_transpose(op)));
      return kRan;
    }
    if (*npt_cmd) {
      const DensityOperator rho = io::density_from_json(io::read_file(state_file));
      const Verdict v = npt_check(rho);
      detail::emit_verdict(rc, out, v);
      return detail::verdict_exit(v);
    }
    if (*bound_cmd) {
      const DensityOperator rho = io::density_from_json(io::read_file(state_file));
      std::vector<BipartiteOperator> candidates;
      for (const auto& f : candidate_files)
        candidates.push_back(io::operator_from_json(io::read_file(f)));
      const BoundCheckResult res = bound_check(rho, candidates, search, rc.solver());
      if (rc.format == "text") {
        detail::emit_text(rc, out, std::string(to_string(res.verdict.kind)) +
                                       " margin=" + detail::fmt(res.verdict.margin) +
                                       " candidates=" + std::to_string(res.candidates_tried) +
                                       "\n" + res.verdict.detail + "\n");
      } else {
        json payload = io::verdict_to_json(res.verdict);
        payload["candidates_tried"] = res.candidates_tried;
        payload["candidate_seed"] = search.seed;
        if (res.succeeding_index) payload["succeeding_index"] = *res.succeeding_index;
        detail::emit_json(rc, out, payload);
      }
      return detail::verdict_exit(res.verdict);
    }
    if (*scan_cmd) {
      const DensityOperator rho = io::density_from_json(io::read_file(state_file));
      grid_spec.dims = rho.dims();
      const OperatorGrid grid(grid_spec);
      grid.check_cap();
      detail::Sink sink(rc.output, out);
      std::ostream& os = sink.os();
      const bool text = rc.format == "text";
      if (text) {
        os << detail::header_text(rc) << " grid_size=" << grid.size()
           << " epsilon=" << detail::fmt(grid_spec.epsilon()) << "\n";
      } else {
        json head;
        head["run"] = rc.header();
        head["grid"] = {{"dim_a", grid_spec.dims.a},
                        {"dim_b", grid_spec.dims.b},
                        {"delta_r", grid_spec.delta_r},
                        {"delta_phi", grid_spec.delta_phi},
                        {"epsilon", grid_spec.epsilon()},
                        {"size", grid.size()},
                        {"resume_from", resume_from}};
        os << head.dump() << "\n" << std::flush;
      }
      const ScanReport rep = scan(rho, grid, rc.solver(), resume_from, [&](const ScanRecord& r) {
        if (text)
          os << "index=" << r.index << " margin=" << detail::fmt(r.margin)
             << " f_value=" << detail::fmt(r.f_value) << "\n";
        else
          os << io::scan_record_to_json(r).dump() << "\n";
        os << std::flush;
      });
      json summary;
      summary["scanned"] = rep.scanned;
      summary["detections"] = rep.detections.size();
      if (rep.scanned > static_cast<std::uint64_t>(rep.failures))
        summary["best_margin"] = rep.best_margin;
      else
        summary["best_margin"] = nullptr;
      summary["best_index"] = rep.best_index;
      summary["failures"] = rep.failures;
      if (text)
        os << "scanned=" << rep.scanned << " detections=" << rep.detections.size()
           << " best_margin=" << detail::fmt(rep.best_margin) << "\n";
      else
        os << json{{"summary", summary}}.dump() << "\n";
      return rep.detections.empty() ? kRan : kDetected;
    }
    if (*gen_cmd) {
      json payload;
      const cplx alpha{alpha_re, alpha_im}, beta{beta_re, beta_im};
      FockTruncation trunc;
      trunc.n_max = n_max;
      if (kind == "bell") payload = io::state_to_json(bell_phi());
      else if (kind == "bell-plus") payload = io::state_to_json(bell_phi_plus());
      else if (kind == "werner") payload = io::operator_to_json(werner(p).op());
      else if (kind == "chi-minus") payload = io::state_to_json(chi_minus(alpha, beta, trunc).state);
      else if (kind == "rho-mix") payload = io::operator_to_json(rho_mix(alpha, beta, eta, trunc).op());
      else if (kind == "random-product") payload = io::state_to_json(random_product({dim_a, dim_b}, rc.seed));
      else if (kind == "random-separable")
        payload = io::operator_to_json(random_separable({dim_a, dim_b}, terms, rc.seed).op());
      else if (kind == "tiles-upb") payload = io::operator_to_json(tiles_upb_state().op());
      else payload = io::operator_to_json(BipartiteOperator::identity({dim_a, dim_b}));
      detail::emit_json(rc, out, payload);
      return kRan;
    }
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::NoConvergence ? kNumericalFailure : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInputError;
}

}  // namespace sepeig::cli
