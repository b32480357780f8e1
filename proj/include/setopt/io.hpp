#pragma once

#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <string>
#include <vector>

#include "setopt/solver.hpp"

/**
 * JSON problem and report files. Rationals travel as JSON integers or as
 * "p/q" strings; the emitter uses the integer form whenever the denominator
 * is one and the value fits a 64-bit integer, so loading and re-emitting a
 * file is idempotent. No floating point value is accepted anywhere.
 */

namespace setopt {

using Json = nlohmann::ordered_json;

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer() && !j.is_number_unsigned())
    return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(Integer(j.get<std::uint64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline Json rational_to_json(const Rational& r) {
  if (denominator(r) == 1) {
    const Integer num = numerator(r);
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
      return Json(static_cast<std::int64_t>(num));
  }
  return Json(to_string(r));
}

inline RVector vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
  RVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = rational_from_json(j[i]);
  return v;
}

inline Json vector_to_json(const RVector& v) {
  Json j = Json::array();
  for (Index i = 0; i < v.size(); ++i) j.push_back(rational_to_json(v(i)));
  return j;
}

inline RMatrix matrix_from_json(const Json& j, Index rows, Index cols, const char* what) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw InputError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  RMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw InputError(std::string(what) + ": row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline Json matrix_to_json(const RMatrix& m) {
  Json j = Json::array();
  for (Index r = 0; r < m.rows(); ++r) j.push_back(vector_to_json(m.row(r).transpose()));
  return j;
}

/**
 * Problem file: { n, q, m, p, A, B, b, Z, options? } with A m x n, B m x q,
 * b length m, Z q x p, options = { gc_values?: bool }.
 */
inline ProblemInstance problem_from_json(const Json& j) {
  for (const char* key : {"n", "q", "m", "p", "A", "B", "b", "Z"})
    if (!j.contains(key)) throw InputError(std::string("problem: missing field '") + key + "'");
  const auto dim = [&](const char* key) {
    if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < 1)
      throw InputError(std::string("problem: '") + key + "' must be a positive integer");
    return static_cast<Index>(j[key].get<std::int64_t>());
  };
  const Index n = dim("n"), q = dim("q"), m = dim("m"), p = dim("p");
  ProblemInstance inst;
  inst.A = matrix_from_json(j["A"], m, n, "A");
  inst.B = matrix_from_json(j["B"], m, q, "B");
  inst.b = vector_from_json(j["b"], "b");
  if (inst.b.size() != m) throw InputError("problem: b must have m entries");
  inst.cone.Z = matrix_from_json(j["Z"], q, p, "Z");
  if (j.contains("options")) {
    const auto& opt = j["options"];
    if (!opt.is_object()) throw InputError("problem: options must be an object");
    if (opt.contains("gc_values")) {
      if (!opt["gc_values"].is_boolean())
        throw InputError("problem: options.gc_values must be a boolean");
      inst.options.gc_values = opt["gc_values"].get<bool>();
    }
  }
  inst.validate();
  return inst;
}

inline Json problem_to_json(const ProblemInstance& inst) {
  Json j;
  j["n"] = inst.n();
  j["q"] = inst.q();
  j["m"] = inst.m();
  j["p"] = inst.p();
  j["A"] = matrix_to_json(inst.A);
  j["B"] = matrix_to_json(inst.B);
  j["b"] = vector_to_json(inst.b);
  j["Z"] = matrix_to_json(inst.cone.Z);
  if (inst.options.gc_values) j["options"] = Json{{"gc_values", true}};
  return j;
}

inline ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open problem file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("problem file '" + path + "': " + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const ValidationError& e) {
    throw InputError("problem file '" + path + "': " + e.what());
  } catch (const InputError& e) {
    throw InputError("problem file '" + path + "': " + e.what());
  }
}

/** Candidate file: a JSON array of rational x-vectors. */
inline std::vector<RVector> candidate_from_json(const Json& j, Index expected_dim) {
  if (!j.is_array()) throw InputError("candidate: expected an array of points");
  std::vector<RVector> points;
  for (std::size_t i = 0; i < j.size(); ++i) {
    RVector x = vector_from_json(j[i], "candidate point");
    if (x.size() != expected_dim)
      throw InputError("candidate: point " + std::to_string(i) + " has dimension " +
                       std::to_string(x.size()) + ", expected " +
                       std::to_string(expected_dim));
    points.push_back(std::move(x));
  }
  return points;
}

inline std::vector<RVector> load_candidate(const std::string& path, Index expected_dim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open candidate file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("candidate file '" + path + "': " + e.what());
  }
  return candidate_from_json(j, expected_dim);
}

inline Json certificate_to_json(const ScalarCertificate& c) {
  Json j;
  j["w"] = vector_to_json(c.w);
  j["gamma"] = rational_to_json(c.gamma);
  j["alpha"] = rational_to_json(c.alpha);
  j["beta"] = rational_to_json(c.beta);
  if (c.improving_x) j["improving_x"] = vector_to_json(*c.improving_x);
  return j;
}

inline Json vrep_to_json(const VRep& v) {
  Json j;
  Json pts = Json::array(), dirs = Json::array();
  for (const auto& p : v.points) pts.push_back(vector_to_json(p));
  for (const auto& d : v.directions) dirs.push_back(vector_to_json(d));
  j["vertices"] = std::move(pts);
  j["directions"] = std::move(dirs);
  return j;
}

inline Json report_to_json(const SetOptReport& report) {
  Json j;
  j["status"] = to_string(report.status);
  if (report.status != SolveStatus::Solved) {
    j["certificate"] = vector_to_json(report.certificate);
    j["solution"] = Json::array();
    return j;
  }
  Json sol = Json::array();
  for (const auto& pt : report.solution) {
    Json e;
    e["x"] = vector_to_json(pt.x);
    Json certs = Json::array();
    for (const auto& c : pt.certificates) certs.push_back(certificate_to_json(c));
    e["certificates"] = std::move(certs);
    sol.push_back(std::move(e));
  }
  j["solution"] = std::move(sol);
  j["infimum"] = vrep_to_json(report.infimum);
  Json pre = Json::array();
  for (const auto& e : report.presolution.entries)
    pre.push_back(Json{{"x", vector_to_json(e.x)}, {"y", vector_to_json(e.y)}});
  j["presolution"] = std::move(pre);
  j["stats"] = Json{{"lp_count", report.stats.lp_count},
                    {"while_restarts", report.stats.while_restarts},
                    {"normals_seen", report.stats.normals_seen},
                    {"skipped", report.stats.skipped}};
  return j;
}

/** Phase-1-only report for the relax command. */
inline Json relax_to_json(const PreSolution& pre, const UpperImage& ui) {
  Json j;
  j["status"] = "Solved";
  Json entries = Json::array();
  for (const auto& e : pre.entries)
    entries.push_back(Json{{"x", vector_to_json(e.x)}, {"y", vector_to_json(e.y)}});
  j["presolution"] = std::move(entries);
  j["infimum"] = vrep_to_json(ui.v);
  return j;
}

inline Json verdict_to_json(const SolutionVerdict& verdict) {
  Json j;
  j["is_infimizer"] = verdict.is_infimizer;
  j["is_solution"] = verdict.is_solution;
  Json bad = Json::array();
  for (const auto& issue : verdict.non_minimizers)
    bad.push_back(Json{{"x", vector_to_json(issue.x)},
                       {"certificate", certificate_to_json(issue.certificate)}});
  j["non_minimizers"] = std::move(bad);
  Json outside = Json::array();
  for (const auto& x : verdict.outside_domain) outside.push_back(vector_to_json(x));
  j["outside_domain"] = std::move(outside);
  return j;
}

inline Json lp_log_to_json(const LpLogEntry& e) {
  return Json{{"vars", e.variables},
              {"rows", e.rows},
              {"status", to_string(e.status)},
              {"value", rational_to_json(e.value)}};
}

}  // namespace setopt
