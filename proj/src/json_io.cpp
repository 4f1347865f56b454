#include "kkcalc/json_io.hpp"

#include "kkcalc/errors.hpp"

#include <cctype>
#include <fstream>
#include <iostream>

namespace kkcalc::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  return j;
}

Int parse_integer_string(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw InputError("malformed integer '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw InputError("malformed integer '" + s + "'");
  return Int(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Int int_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return parse_integer_string(j.get<std::string>());
  throw InputError("expected an integer, got " + j.dump());
}

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

std::int64_t small_int_from_json(const Json& j, const char* what) {
  const Int v = int_from_json(j);
  if (!v.fits_slong_p()) throw InputError(std::string(what) + " out of range");
  return v.get_si();
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  Rational q(int_from_json(j));
  q.canonicalize();
  return q;
}

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) return int_to_json(q.get_num());
  return Json(to_string(q));
}

Json ints_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(int_to_json(x));
  return out;
}

DirectSumAlgebra algebra_from_json(const Json& j) {
  std::vector<DimDropBlock> blocks;
  for (const Json& s : array(field(j, "summands"), "summands")) {
    DimDropBlock b;
    b.r = s.contains("r") ? small_int_from_json(s["r"], "r") : 1;
    b.m0 = small_int_from_json(field(s, "m0"), "m0");
    b.m = small_int_from_json(field(s, "m"), "m");
    b.m1 = small_int_from_json(field(s, "m1"), "m1");
    blocks.push_back(b);
  }
  return validate_algebra(std::move(blocks));
}

Json algebra_to_json(const DirectSumAlgebra& a) {
  Json s = Json::array();
  for (const auto& b : a.summands()) s.push_back({{"r", b.r}, {"m0", b.m0}, {"m", b.m}, {"m1", b.m1}});
  return {{"summands", s}};
}

KKDiagram diagram_from_json(const DirectSumAlgebra& source, const DirectSumAlgebra& target, const Json& j) {
  std::vector<std::vector<BlockEntry>> blocks;
  for (const Json& row : array(field(j, "blocks"), "blocks")) {
    auto& out = blocks.emplace_back();
    for (const Json& e : array(row, "diagram row"))
      out.push_back(BlockEntry{int_from_json(field(e, "a")), int_from_json(field(e, "b")),
                               int_from_json(field(e, "c")), int_from_json(field(e, "d")),
                               int_from_json(field(e, "s"))});
  }
  return validate_diagram(source, target, std::move(blocks));
}

Json diagram_to_json(const KKDiagram& x) {
  Json rows = Json::array();
  for (const auto& row : x.blocks()) {
    Json r = Json::array();
    for (const auto& e : row)
      r.push_back({{"a", int_to_json(e.a)},
                   {"b", int_to_json(e.b)},
                   {"c", int_to_json(e.c)},
                   {"d", int_to_json(e.d)},
                   {"s", int_to_json(e.s)}});
    rows.push_back(r);
  }
  return {{"blocks", rows}};
}

PLPath path_from_json(const Json& j) {
  std::vector<PLPoint> pts;
  for (const Json& p : array(j, "path")) {
    if (!p.is_array() || p.size() != 2) throw InputError("path points are [t, v] pairs");
    pts.push_back({rational_from_json(p[0]), rational_from_json(p[1])});
  }
  return PLPath(std::move(pts));
}

Json path_to_json(const PLPath& p) {
  Json out = Json::array();
  for (const auto& pt : p.points()) out.push_back(Json::array({rational_to_json(pt.t), rational_to_json(pt.v)}));
  return out;
}

std::vector<PLPath> paths_from_json(const Json& j) {
  const Json& list = j.is_object() ? field(j, "profiles") : j;
  std::vector<PLPath> out;
  for (const Json& p : array(list, "profiles")) out.push_back(path_from_json(p));
  return out;
}

HomomorphismData hom_data_from_json(const DirectSumAlgebra& source, const DirectSumAlgebra& target, const Json& j) {
  std::vector<std::vector<BlockHomData>> blocks;
  for (const Json& row : array(field(j, "blocks"), "blocks")) {
    auto& out = blocks.emplace_back();
    for (const Json& e : array(row, "homomorphism data row")) {
      BlockHomData b;
      b.s0 = small_int_from_json(field(e, "s0"), "s0");
      b.s1 = small_int_from_json(field(e, "s1"), "s1");
      if (e.contains("paths"))
        for (const Json& p : array(e["paths"], "paths")) b.paths.push_back(path_from_json(p));
      out.push_back(std::move(b));
    }
  }
  const bool unital = j.is_object() && j.contains("unital") && j["unital"].get<bool>();
  return validate_hom_data(source, target, std::move(blocks), unital);
}

Json hom_data_to_json(const HomomorphismData& h) {
  Json rows = Json::array();
  for (const auto& row : h.blocks()) {
    Json r = Json::array();
    for (const auto& e : row) {
      Json paths = Json::array();
      for (const auto& p : e.paths) paths.push_back(path_to_json(p));
      r.push_back({{"s0", e.s0}, {"s1", e.s1}, {"paths", paths}});
    }
    rows.push_back(r);
  }
  return {{"blocks", rows}};
}

InductiveSystem system_from_json(const Json& j) {
  std::vector<DirectSumAlgebra> stages;
  for (const Json& s : array(field(j, "stages"), "stages")) stages.push_back(algebra_from_json(s));
  const Json& conn = array(field(j, "connecting"), "connecting");
  if (stages.empty()) throw InputError("a system needs at least one stage");
  if (conn.size() + 1 != stages.size())
    throw InputError("a system with " + std::to_string(stages.size()) + " stages needs " +
                     std::to_string(stages.size() - 1) + " connecting maps, got " + std::to_string(conn.size()));
  std::vector<HomomorphismData> maps;
  for (std::size_t n = 0; n < conn.size(); ++n) maps.push_back(hom_data_from_json(stages[n], stages[n + 1], conn[n]));
  return InductiveSystem(std::move(stages), std::move(maps));
}

Json system_to_json(const InductiveSystem& s) {
  Json stages = Json::array(), conn = Json::array();
  for (const auto& a : s.stages()) stages.push_back(algebra_to_json(a));
  for (const auto& h : s.connecting()) conn.push_back(hom_data_to_json(h));
  return {{"stages", stages}, {"connecting", conn}};
}

std::vector<SeedEntry> seed_from_json(const InductiveSystem& a, const InductiveSystem& b, const Json& j) {
  std::vector<SeedEntry> out;
  for (const Json& e : array(field(j, "entries"), "entries")) {
    SeedEntry s;
    s.source_stage = static_cast<std::size_t>(small_int_from_json(field(e, "source_stage"), "source_stage"));
    s.target_stage = static_cast<std::size_t>(small_int_from_json(field(e, "target_stage"), "target_stage"));
    const DirectSumAlgebra& src = a.stage(s.source_stage);
    const DirectSumAlgebra& tgt = b.stage(s.target_stage);
    const Json& d = field(e, "diagram");
    if (d.is_string()) {
      if (d.get<std::string>() != "identity") throw InputError("unknown seed diagram '" + d.get<std::string>() + "'");
      if (!(src == tgt)) throw AlgebraMismatchError("identity seed between different algebras");
      s.cls = identity_class(src);
    } else {
      s.cls = canonicalize(diagram_from_json(src, tgt, d));
    }
    out.push_back(std::move(s));
  }
  return out;
}

Json group_to_json(const FgGroup& g) {
  Json f = Json::array();
  for (const Int& t : g.torsion_factors()) f.push_back(int_to_json(t));
  return {{"free_rank", g.free_rank()}, {"invariant_factors", f}};
}

Json certificate_to_json(const LiftCertificate& c) {
  Json shifts = Json::array();
  for (const auto& row : c.shifts) {
    Json r = Json::array();
    for (const auto& [u1, u2] : row) r.push_back(Json::array({int_to_json(u1), int_to_json(u2)}));
    shifts.push_back(r);
  }
  Json unit = Json::array();
  for (const Int& u : c.unit_image) unit.push_back(int_to_json(u));
  return {{"shifts", shifts}, {"shifted", diagram_to_json(c.shifted)}, {"unit_image", unit}};
}

Json ladder_to_json(const Ladder& l) {
  Json down = Json::array(), up = Json::array();
  for (const auto& x : l.down)
    down.push_back({{"canonical", ints_to_json(x.canonical)}, {"representative", diagram_to_json(x.representative)}});
  for (const auto& x : l.up)
    up.push_back({{"canonical", ints_to_json(x.canonical)}, {"representative", diagram_to_json(x.representative)}});
  return {{"source_stages", l.source_stages}, {"target_stages", l.target_stages}, {"down", down}, {"up", up}};
}

Json load(const std::string& source) {
  std::size_t i = 0;
  while (i < source.size() && std::isspace(static_cast<unsigned char>(source[i]))) ++i;
  try {
    if (i < source.size() && (source[i] == '{' || source[i] == '[')) return Json::parse(source);
    if (source == "-") return Json::parse(std::cin);
    std::ifstream in(source);
    if (!in) throw InputError("cannot read '" + source + "'");
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in '" + source + "': " + e.what());
  }
}

}  // namespace kkcalc::io
