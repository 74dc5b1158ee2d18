#pragma once

// JSON file formats.
//
//   operator / density: {"dim_a": int, "dim_b": int, "matrix": [[[re, im], ...], ...]}
//   pure state:         {"dim_a": int, "dim_b": int, "vector": [[re, im], ...]}
//
// Matrices are row-major in the composite index p * d_b + q.  Unknown keys
// (e.g. a "run" header) are ignored on input.

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "sepeig/core.hpp"
#include "sepeig/opgrid.hpp"
#include "sepeig/solver.hpp"
#include "sepeig/witness.hpp"

namespace sepeig::io {

using json = nlohmann::ordered_json;

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  detail::require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
                  ErrorKind::Parse, "parse: complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

inline Vector vector_from_json(const json& j) {
  detail::require(j.is_array(), ErrorKind::Parse, "parse: vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  detail::require(j.is_array(), ErrorKind::Parse, "parse: matrix must be an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    detail::require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n, ErrorKind::Parse,
                    "parse: matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline Dims dims_from_json(const json& j) {
  detail::require(j.is_object() && j.contains("dim_a") && j.contains("dim_b") &&
                      j["dim_a"].is_number_integer() && j["dim_b"].is_number_integer(),
                  ErrorKind::Parse, "parse: missing integer dim_a / dim_b");
  return {j["dim_a"].get<int>(), j["dim_b"].get<int>()};
}

inline json operator_to_json(const BipartiteOperator& op) {
  json j;
  j["dim_a"] = op.dims().a;
  j["dim_b"] = op.dims().b;
  j["matrix"] = matrix_to_json(op.matrix());
  return j;
}

inline json state_to_json(const PureBipartiteState& psi) {
  json j;
  j["dim_a"] = psi.dims().a;
  j["dim_b"] = psi.dims().b;
  j["vector"] = vector_to_json(psi.vector());
  return j;
}

inline PureBipartiteState state_from_json(const json& j) {
  const Dims d = dims_from_json(j);
  detail::require(j.contains("vector"), ErrorKind::Parse, "parse: state file needs \"vector\"");
  return {d, vector_from_json(j["vector"])};
}

/// Operator from a "matrix" file; a pure-state file gives its projector.
inline BipartiteOperator operator_from_json(const json& j) {
  const Dims d = dims_from_json(j);
  if (!j.contains("matrix") && j.contains("vector")) return state_from_json(j).projector();
  detail::require(j.contains("matrix"), ErrorKind::Parse, "parse: operator file needs \"matrix\"");
  return {d, matrix_from_json(j["matrix"])};
}

/// Density operator from either schema; a pure state becomes its projector.
inline DensityOperator density_from_json(const json& j) {
  if (j.is_object() && j.contains("vector")) return DensityOperator(state_from_json(j));
  return DensityOperator(operator_from_json(j));
}

inline json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("parse: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), ErrorKind::Parse, "parse: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline json local_vector_to_json(const LocalVector& v) { return vector_to_json(v.coeffs()); }

inline json spectrum_to_json(const SepSpectrum& s) {
  json j;
  j["sup_g"] = s.sup_g;
  j["inf_g"] = s.inf_g;
  j["starts_used"] = s.starts_used;
  j["converged_fraction"] = s.converged_fraction;
  json pairs = json::array();
  for (const auto& p : s.pairs) {
    json e;
    e["g"] = p.g;
    e["residual"] = p.residual;
    e["a"] = local_vector_to_json(p.a);
    e["b"] = local_vector_to_json(p.b);
    pairs.push_back(std::move(e));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

inline json verdict_to_json(const Verdict& v) {
  json j;
  j["kind"] = to_string(v.kind);
  j["margin"] = v.margin;
  j["detail"] = v.detail;
  return j;
}

inline json scan_record_to_json(const ScanRecord& r) {
  json j;
  j["index"] = r.index;
  j["margin"] = r.margin;
  j["f_value"] = r.f_value;
  return j;
}

}  // namespace sepeig::io
