#pragma once

// JSON and CSV persistence. Every serialized floating-point number is rounded
// to 12 significant digits so identical runs produce identical bytes.
//
// Operator-spec schema (complex numbers are [re, im] pairs):
//   {"type": "jacobi1d", "a": [[re,im],...], "b": [[re,im],...],
//    "n": <int, optional>, "mode": "hard" | "approximate"}
//   {"type": "lattice", "nu": <int>, "box_side": <int>,
//    "a": [{"bond": [[i,j,..],[k,l,..]], "value": [re,im]}, ...],
//    "b": [{"site": [i,j,..], "value": [re,im]}, ...],
//    "mode": "hard" | "approximate"}

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ltj/bounds.hpp"
#include "ltj/eigen.hpp"
#include "ltj/lemmas.hpp"
#include "ltj/operators.hpp"

namespace ltj {

using json = nlohmann::json;

/// x rounded to 12 significant digits (the value nlohmann then prints).
double canonical(double x);

/// Throws SchemaError naming the offending field.
OperatorSpec spec_from_json(const json& j);
json spec_to_json(const OperatorSpec& spec);
OperatorSpec load_spec(const std::string& path);

json spectrum_to_json(const Spectrum& s);
json report_to_json(const BoundReport& r);
json reports_to_json(const std::vector<BoundReport>& reports);
json majorization_to_json(const MajorizationReport& r);

/// Columns: theorem,p,alpha,theta,nu,lhs,rhs,ratio,holds,mode,diagnostics.
void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports);

/// 2-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace ltj
