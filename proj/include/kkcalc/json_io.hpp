#pragma once

// JSON schemas for algebras, diagrams, homomorphism data, inductive systems
// and seeds. Integers may be JSON numbers or decimal strings; rationals are
// numbers or "p/q" strings. Every reader throws InputError on malformed input
// and the library's own errors on invalid mathematical data.

#include "kkcalc/intertwine.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kkcalc::io {

using Json = nlohmann::json;

Int int_from_json(const Json& j);
// A number when it fits a signed 64-bit integer, otherwise a string.
Json int_to_json(const Int& v);
std::int64_t small_int_from_json(const Json& j, const char* what);
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);
Json ints_to_json(const IntVector& v);

// {"summands":[{"r":1,"m0":1,"m":2,"m1":1}, ...]}; r defaults to 1.
DirectSumAlgebra algebra_from_json(const Json& j);
Json algebra_to_json(const DirectSumAlgebra& a);

// {"blocks":[[{"a":..,"b":..,"c":..,"d":..,"s":..}, ...], ...]} indexed [target][source].
KKDiagram diagram_from_json(const DirectSumAlgebra& source, const DirectSumAlgebra& target, const Json& j);
Json diagram_to_json(const KKDiagram& x);

// [[t, v], ...]
PLPath path_from_json(const Json& j);
Json path_to_json(const PLPath& p);
std::vector<PLPath> paths_from_json(const Json& j);

// {"blocks":[[{"s0":1,"s1":0,"paths":[[[0,0],[1,"1/2"]]]}]]}
HomomorphismData hom_data_from_json(const DirectSumAlgebra& source, const DirectSumAlgebra& target, const Json& j);
Json hom_data_to_json(const HomomorphismData& h);

// {"stages":[algebra, ...],"connecting":[homdata, ...]}
InductiveSystem system_from_json(const Json& j);
Json system_to_json(const InductiveSystem& s);

// {"entries":[{"source_stage":0,"target_stage":0,"diagram":{...} | "identity"}]}
std::vector<SeedEntry> seed_from_json(const InductiveSystem& a, const InductiveSystem& b, const Json& j);

// {"free_rank":r,"invariant_factors":[torsion factors]}
Json group_to_json(const FgGroup& g);

Json certificate_to_json(const LiftCertificate& c);
Json ladder_to_json(const Ladder& l);

// Inline JSON when the text starts with '{' or '[', "-" for standard input,
// otherwise a file path.
Json load(const std::string& source);

}  // namespace kkcalc::io
