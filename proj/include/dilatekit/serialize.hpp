#pragma once

#include <string>

#include <json.hpp>

#include "dilatekit/finsupp.hpp"
#include "dilatekit/matrix.hpp"
#include "dilatekit/rational.hpp"
#include "dilatekit/seqop.hpp"

namespace dilatekit {

// JSON forms:
//   Rat     "p/q" string, or a bare integer when the value is integral and
//           fits in 64 bits (larger integers are strings)
//   Vec     array of Rat
//   Mat     row-major array of arrays
//   FsVec   {"domain": "uninat"|"biint"|"grid", "dim": d,
//            "support": [{"index": n | [n, m], "value": [...]}, ...]}
//   SeqOp   {"kind": ..., kind-specific fields}

nlohmann::json to_json(const Rat& r);
nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const Mat& m);
nlohmann::json to_json(const FsVec& x);
nlohmann::json to_json(const SeqOp& op);

// Parsers report failures as ParseError (or DenominatorZero) prefixed with
// a JSON-path location such as "$.T[1][0]".
Rat parse_rat(const nlohmann::json& j, const std::string& where = "$");
Vec parse_vec(const nlohmann::json& j, const std::string& where = "$");
Mat parse_mat(const nlohmann::json& j, const std::string& where = "$");
IndexDomain parse_domain(const nlohmann::json& j, const std::string& where = "$");
FsVec parse_fsvec(const nlohmann::json& j, const std::string& where = "$");
SeqOp parse_seqop(const nlohmann::json& j, const std::string& where = "$");

/// Reads and parses a JSON file; ParseError carries "path:line:col" style
/// context on malformed input.
nlohmann::json read_json_file(const std::string& path);

}  // namespace dilatekit
