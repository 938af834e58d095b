#include "defseq/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "defseq/errors.hpp"
#include "defseq/kernels.hpp"
#include "defseq/random.hpp"

namespace defseq {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError("tuple file: " + what); }

std::size_t read_count(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    fail(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double read_real(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where + " is not finite");
  return x;
}

ComplexMatrix read_matrix(const nlohmann::json& m, std::size_t h, std::size_t index) {
  const std::string where = "operator " + std::to_string(index + 1);
  if (!m.is_array() || m.size() != h) fail(where + " must have " + std::to_string(h) + " rows");
  std::vector<Complex> entries;
  entries.reserve(h * h);
  for (std::size_t r = 0; r < h; ++r) {
    const auto& row = m[r];
    if (!row.is_array() || row.size() != h) {
      fail(where + " row " + std::to_string(r + 1) + " must have " + std::to_string(h) + " entries");
    }
    for (std::size_t c = 0; c < h; ++c) {
      const auto& e = row[c];
      const std::string at = where + " entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
      if (!e.is_array() || e.size() != 2) fail(at + " must be a [re, im] pair");
      entries.emplace_back(read_real(e[0], at), read_real(e[1], at));
    }
  }
  return ComplexMatrix(h, h, std::move(entries));
}

Json count_list(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json tuple_to_json(const OperatorTuple& t, const Json& meta) {
  Json j;
  j["format"] = kTupleFormat;
  j["version"] = kTupleFormatVersion;
  j["d"] = t.arity();
  j["dim"] = t.dim();
  Json ops = Json::array();
  for (const auto& op : t.ops()) ops.push_back(matrix_to_json(op));
  j["ops"] = std::move(ops);
  Json m = meta.is_object() ? meta : Json::object();
  if (!m.contains("label")) m["label"] = t.label();
  j["meta"] = std::move(m);
  return j;
}

TupleFile tuple_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("top level must be an object");
  if (!j.contains("format") || !j["format"].is_string() || j["format"].get<std::string>() != kTupleFormat) {
    fail(std::string("field 'format' must be \"") + kTupleFormat + "\"");
  }
  if (read_count(j, "version") != static_cast<std::size_t>(kTupleFormatVersion)) fail("unsupported version");
  const std::size_t d = read_count(j, "d");
  const std::size_t h = read_count(j, "dim");
  if (d == 0) fail("d must be at least 1");
  if (h == 0) fail("dim must be at least 1");
  if (!j.contains("ops") || !j["ops"].is_array()) fail("missing array field 'ops'");
  const auto& ops = j["ops"];
  if (ops.size() != d) fail("'ops' has " + std::to_string(ops.size()) + " operators, d = " + std::to_string(d));
  std::vector<ComplexMatrix> mats;
  mats.reserve(d);
  for (std::size_t i = 0; i < d; ++i) mats.push_back(read_matrix(ops[i], h, i));

  TupleFile f{OperatorTuple(std::move(mats)), Json::object()};
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) fail("'meta' must be an object");
    f.meta = Json::parse(j["meta"].dump());
    if (f.meta.contains("label") && f.meta["label"].is_string()) {
      f.tuple = f.tuple.with_label(f.meta["label"].get<std::string>());
    }
  }
  return f;
}

TupleFile read_tuple(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
  try {
    return tuple_from_json(j);
  } catch (const FormatError& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

void write_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write to '" + path + "' failed");
}

void write_tuple(const OperatorTuple& t, const std::string& path, const Json& meta) {
  write_json_file(tuple_to_json(t, meta), path);
}

Json to_json(const RankTolerance& tol) {
  Json j;
  j["rtol"] = tol.rtol;
  j["atol"] = tol.atol;
  return j;
}

Json to_json(const DefectReport& r) {
  Json j;
  j["dim"] = r.dim;
  j["arity"] = r.arity;
  j["commuting"] = r.commuting;
  j["deltas"] = count_list(r.deltas);
  j["stabilized_at"] = r.stabilized_at ? Json(*r.stabilized_at) : Json(nullptr);
  j["reached_full"] = r.reached_full;
  j["noncomm_bounds"] = r.noncomm_bounds;
  j["bound_ok_noncomm"] = r.bound_ok_noncomm;
  if (r.commuting) {
    j["comm_bounds"] = r.comm_bounds;
    j["bound_ok_comm"] = r.bound_ok_comm;
  } else {
    j["comm_bounds"] = nullptr;
    j["bound_ok_comm"] = nullptr;
  }
  j["tolerance"] = to_json(r.tol);
  return j;
}

Json to_json(const PurityVerdict& v, bool include_limit) {
  Json j;
  j["status"] = purity_status_name(v.status);
  j["iterations"] = v.iterations;
  j["residual_norm"] = v.residual_norm;
  if (v.limit) {
    const ComplexMatrix& q = *v.limit;
    j["limit_trace"] = trace(q).real();
    j["limit_idempotence_error"] = max_abs_diff(q * q, q);
    if (include_limit) j["limit"] = matrix_to_json(q);
  } else {
    j["limit_trace"] = nullptr;
  }
  return j;
}

Json to_json(const MaximalityVerdict& v) {
  Json j;
  j["maximal"] = v.maximal;
  j["horizon"] = v.horizon;
  j["horizon_defaulted"] = v.horizon_defaulted;
  j["deltas"] = count_list(v.deltas);
  j["bounds"] = v.bounds;
  j["first_mismatch"] = v.first_mismatch ? Json(*v.first_mismatch) : Json(nullptr);
  j["saturated"] = v.saturated;
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json j;
  j["dim"] = r.dim;
  j["arity"] = r.arity;
  j["contractive"] = r.contractive;
  j["min_defect_eigenvalue"] = r.min_defect_eigenvalue;
  j["commuting"] = r.commuting;
  j["max_commutator_norm"] = r.max_commutator_norm;
  j["delta_1"] = r.contractive ? Json(r.delta_1) : Json(nullptr);
  j["purity"] = r.purity ? to_json(*r.purity) : Json(nullptr);
  j["maximal_noncomm"] = r.maximal_noncomm ? to_json(*r.maximal_noncomm) : Json(nullptr);
  j["maximal_comm"] = r.maximal_comm ? to_json(*r.maximal_comm) : Json(nullptr);
  j["commutant_dim"] = r.commutant_dim ? Json(*r.commutant_dim) : Json(nullptr);
  j["irreducible"] = r.irreducible ? Json(*r.irreducible) : Json(nullptr);
  j["irreducible_pure_consistent"] = r.irreducible_pure_consistent;
  Json opts;
  opts["tolerance"] = to_json(r.options.tol);
  opts["max_iter"] = r.options.purity.max_iter;
  opts["eps_pure"] = r.options.purity.eps_pure;
  opts["eps_conv"] = r.options.purity.eps_conv;
  opts["horizon"] = r.options.horizon ? Json(*r.options.horizon) : Json(nullptr);
  opts["max_commutant_dim"] = r.options.limits.max_commutant_dim;
  j["options"] = std::move(opts);
  return j;
}

Json to_json(const RankSymmetryVerdict& v) {
  Json j;
  j["n"] = v.n;
  j["rank_left"] = v.rank_left;
  j["rank_right"] = v.rank_right;
  j["ker_dim"] = v.ker_dim;
  j["coker_dim"] = v.coker_dim;
  j["equal_ranks"] = v.equal_ranks;
  j["equal_kernels"] = v.equal_kernels;
  j["biconditional_holds"] = v.biconditional_holds();
  return j;
}

Json to_json(const ProductBoundsCheck& c) {
  Json j;
  j["m"] = c.m;
  j["delta_b"] = c.delta_b;
  j["delta_c"] = c.delta_c;
  j["delta_bc"] = c.delta_bc;
  j["lower_ok"] = c.lower_ok;
  j["upper_ok"] = c.upper_ok;
  return j;
}

Json to_json(const SuiteOutcome& s) {
  Json j;
  j["suite"] = s.suite;
  j["all_passed"] = s.all_passed();
  j["failed"] = s.total_failed();
  Json props = Json::array();
  for (const auto& p : s.properties) {
    Json e;
    e["name"] = p.name;
    e["checked"] = p.checked;
    e["passed"] = p.passed;
    e["failed"] = p.failed;
    e["skipped"] = p.skipped;
    e["first_failure"] = p.first_failure ? Json(*p.first_failure) : Json(nullptr);
    props.push_back(std::move(e));
  }
  j["properties"] = std::move(props);
  Json exps = Json::array();
  for (const auto& e : s.experiments) {
    Json x;
    x["name"] = e.name;
    x["data"] = e.data;
    exps.push_back(std::move(x));
  }
  j["experiments"] = std::move(exps);
  return j;
}

Json report_header(const std::string& command) {
  Json j;
  j["tool"] = "defseq";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["kernel"] = std::string(kernels::isa_name(kernels::active_isa()));
  j["rng"] = std::string(SplitMix64::kName);
  return j;
}

}  // namespace defseq
