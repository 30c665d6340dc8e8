#pragma once

// JSON wire formats.
//   matrix:      {"rows": n, "cols": m, "data": [[re, im], ...]}   row-major
//   conjugation: the matrix object plus "kind": "antilinear"
//   measure:     {"atoms": {"<cluster index>": mass, ...}}
//   block list:  array of matrix objects
// Doubles are written with round-trip precision, so a write/read cycle is
// bit-exact.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "conjsym/antilinear.hpp"
#include "conjsym/conjfamily.hpp"
#include "conjsym/hyperinv.hpp"
#include "conjsym/spectral.hpp"

namespace conjsym::io {

using json = nlohmann::json;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex entries must be [re, im] number pairs");
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("non-finite complex entry");
  return {re, im};
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  for (const char* key : {"rows", "cols", "data"})
    if (!j.contains(key)) throw ParseError(std::string("matrix is missing \"") + key + "\"");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError("rows and cols must be positive integers");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  if (rows < 1 || cols < 1) throw ParseError("rows and cols must be >= 1");
  const json& data = j["data"];
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("data must hold rows*cols entries");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * cols + k)]);
  return m;
}

inline json conjugation_to_json(const Conjugation& c) {
  json j = matrix_to_json(c.matrix());
  j["kind"] = "antilinear";
  return j;
}

// Validates the conjugation invariants at `tol`.
inline Conjugation conjugation_from_json(const json& j, double tol = Conjugation::kDefaultTol) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != "antilinear")
    throw ParseError("conjugation must carry \"kind\": \"antilinear\"");
  ComplexMatrix a = matrix_from_json(j);
  if (a.rows() != a.cols()) throw ParseError("conjugation matrix must be square");
  return Conjugation(std::move(a), tol);
}

inline json measure_to_json(const AtomicMeasure& m) {
  json atoms = json::object();
  for (const auto& [k, mass] : m.atoms()) atoms[std::to_string(k)] = mass;
  return {{"atoms", std::move(atoms)}};
}

inline AtomicMeasure measure_from_json(const json& j, std::size_t cluster_count) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_object())
    throw ParseError("measure must be {\"atoms\": {...}}");
  AtomicMeasure m(cluster_count);
  for (const auto& [key, value] : j["atoms"].items()) {
    std::size_t idx = 0;
    std::size_t used = 0;
    try {
      idx = std::stoul(key, &used);
    } catch (const std::exception&) {
      throw ParseError("atom key \"" + key + "\" is not a cluster index");
    }
    if (used != key.size()) throw ParseError("atom key \"" + key + "\" is not a cluster index");
    if (!value.is_number()) throw ParseError("atom masses must be numbers");
    m.set(idx, value.get<double>());
  }
  return m;
}

inline json blocks_to_json(const BlockList& blocks) {
  json arr = json::array();
  for (const auto& b : blocks) arr.push_back(matrix_to_json(b));
  return arr;
}

inline BlockList blocks_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("block list must be an array");
  BlockList blocks;
  for (const auto& b : j) blocks.push_back(matrix_from_json(b));
  return blocks;
}

inline json clusters_to_json(const UnitarySpectralDecomposition& dec) {
  json arr = json::array();
  for (std::size_t j = 0; j < dec.cluster_count(); ++j) {
    const auto& c = dec.clusters[j];
    arr.push_back({{"index", j},
                   {"xi", complex_to_json(c.xi)},
                   {"arg", arg_0_2pi(c.xi)},
                   {"multiplicity", c.multiplicity},
                   {"columns", {c.offset, c.offset + c.multiplicity}}});
  }
  return arr;
}

inline json parametrization_to_json(const ConjugationParametrization& p) {
  return {{"dimension", p.dim()},
          {"cluster_count", p.block_count()},
          {"clusters", clusters_to_json(p.dec)},
          {"block_dims", p.block_dims},
          {"real_parameter_count", p.real_parameter_count()},
          {"reconstruction_residual", p.dec.reconstruction_residual},
          {"w", matrix_to_json(p.dec.w)}};
}

inline json audit_to_json(const EquivalenceAudit& a) {
  json lattice = json::array();
  for (const auto& e : a.lattice) {
    lattice.push_back({{"omega_mask", e.omega.mask()},
                       {"omega", e.omega.members()},
                       {"dimension", e.dim},
                       {"spectral_ok", e.spectral_ok},
                       {"h_mu_ok", e.h_mu_ok},
                       {"reducing_ok", e.reducing_ok},
                       {"reducing_defect", e.reducing_defect},
                       {"conjugation_invariant", e.conjugation_ok},
                       {"max_conjugation_defect", e.max_conjugation_defect},
                       {"passed", e.passed()}});
  }
  json randoms = json::array();
  for (const auto& r : a.random_subspaces) {
    json entry = {{"dimension", r.dim},
                  {"verdict", to_string(r.outcome)},
                  {"members_tested", r.members_tested},
                  {"witness_defect", r.witness_defect}};
    if (r.witness) entry["witness"] = conjugation_to_json(*r.witness);
    randoms.push_back(std::move(entry));
  }
  return {{"cluster_count", a.cluster_count},
          {"random_subspace_samples", a.samples},
          {"seed", a.seed},
          {"lattice_size", a.lattice.size()},
          {"lattice", std::move(lattice)},
          {"random_subspaces", std::move(randoms)},
          {"lattice_failures", a.lattice_failures()},
          {"inconclusive", a.inconclusive()},
          {"witness_search", "probabilistic"},
          {"passed", a.passed()}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

} // namespace conjsym::io
