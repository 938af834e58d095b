#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "defseq/classifier.hpp"
#include "defseq/defect.hpp"
#include "defseq/tuple.hpp"
#include "defseq/verify.hpp"

namespace defseq {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kTupleFormat = "defseq.tuple";
inline constexpr int kTupleFormatVersion = 1;

using Json = nlohmann::ordered_json;

// Tuple file layout:
//   {"format": "defseq.tuple", "version": 1, "d": d, "dim": h,
//    "ops": [ op_1, ..., op_d ], "meta": {...}}
// with each op a list of h rows, each row a list of h [re, im] pairs.
// Doubles are written in shortest round-trip form, so reading back
// reproduces every entry bit-exactly.

struct TupleFile {
  OperatorTuple tuple;
  Json meta = Json::object();
};

Json tuple_to_json(const OperatorTuple& t, const Json& meta = Json::object());
/// Throws FormatError on any structural or numeric problem.
TupleFile tuple_from_json(const nlohmann::json& j);

/// Throws FormatError when the file cannot be opened or parsed.
TupleFile read_tuple(const std::string& path);
void write_tuple(const OperatorTuple& t, const std::string& path, const Json& meta = Json::object());

Json matrix_to_json(const ComplexMatrix& m);

Json to_json(const RankTolerance& tol);
Json to_json(const DefectReport& r);
Json to_json(const PurityVerdict& v, bool include_limit = false);
Json to_json(const MaximalityVerdict& v);
Json to_json(const ClassificationReport& r);
Json to_json(const RankSymmetryVerdict& v);
Json to_json(const ProductBoundsCheck& c);
Json to_json(const SuiteOutcome& s);

/// Tool version, kernel variant and random generator name.
Json report_header(const std::string& command);

/// Pretty-printed with a trailing newline; throws FormatError when the file cannot be written.
void write_json_file(const Json& j, const std::string& path);

}  // namespace defseq
