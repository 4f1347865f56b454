#include "kkcalc/cli.hpp"

#include "kkcalc/errors.hpp"
#include "kkcalc/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <ostream>

namespace kkcalc {

namespace {

using io::Json;

struct Outcome {
  Json doc;
  bool affirmative = true;
};

std::string human_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print(const Outcome& o, bool json, std::ostream& out) {
  if (json) {
    out << o.doc.dump() << '\n';
    return;
  }
  for (const auto& [k, v] : o.doc.items()) out << k << ": " << human_value(v) << '\n';
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(io::rational_to_json(q));
  return out;
}

Outcome run_kt(const std::string& alg) {
  const DirectSumAlgebra a = io::algebra_from_json(io::load(alg));
  const KTheoryData kt = k_theory(a);
  const FgGroup k1 = k1_group(a);
  Json blocks = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& b = kt.blocks[i];
    blocks.push_back({{"summand", a[i].describe()},
                      {"K1_order", io::int_to_json(b.k1_order)},
                      {"unit", io::int_to_json(b.unit_coefficient)},
                      {"generator_ranks", Json::array({io::int_to_json(b.g0), io::int_to_json(b.g1)})}});
  }
  Json doc;
  doc["K0"] = a.size() == 1 ? std::string("Z") : "Z^" + std::to_string(a.size());
  doc["K1_order"] = io::int_to_json(k1.is_trivial() ? Int(1) : k1.order());
  doc["K1_invariant_factors"] = io::group_to_json(k1)["invariant_factors"];
  doc["unit"] = a.size() == 1 ? io::int_to_json(kt.blocks[0].unit_coefficient) : io::ints_to_json(kt.unit_class());
  doc["summands"] = blocks;
  return {doc, true};
}

Outcome run_totalk(const std::string& alg, std::vector<std::int64_t> coeffs) {
  const DirectSumAlgebra a = io::algebra_from_json(io::load(alg));
  if (coeffs.empty()) coeffs = coefficient_set(coefficient_bound_from_env());
  for (auto n : coeffs)
    if (n < 2) throw InputError("coefficients must be at least 2, got " + std::to_string(n));
  std::sort(coeffs.begin(), coeffs.end());
  coeffs.erase(std::unique(coeffs.begin(), coeffs.end()), coeffs.end());
  const TotalKModule t = total_k(a, coeffs);
  Json parts = Json::array();
  for (const auto& p : t.parts)
    parts.push_back({{"n", p.n}, {"K0", io::group_to_json(p.k0.group)}, {"K1", io::group_to_json(p.k1.group)}});
  const bool exact = t.bockstein_exact();
  Json doc = {{"K0", io::group_to_json(t.k0.group)},
              {"K1", io::group_to_json(t.k1.group)},
              {"coefficients", parts},
              {"bockstein_exact", exact}};
  return {doc, exact};
}

Outcome run_kk(const std::string& a, const std::string& b) {
  const auto g = kk_group(io::algebra_from_json(io::load(a)), io::algebra_from_json(io::load(b)));
  return {io::group_to_json(g->group()), true};
}

Json class_to_json(const KKClass& x) {
  return {{"canonical", io::ints_to_json(x.canonical)},
          {"representative", io::diagram_to_json(x.representative)},
          {"group", io::group_to_json(x.group->group())}};
}

Outcome run_canon(const std::string& a, const std::string& b, const std::string& d) {
  const DirectSumAlgebra src = io::algebra_from_json(io::load(a));
  const DirectSumAlgebra tgt = io::algebra_from_json(io::load(b));
  return {class_to_json(canonicalize(io::diagram_from_json(src, tgt, io::load(d)))), true};
}

Outcome run_compose(const std::string& a, const std::string& b, const std::string& c, const std::string& d1,
                    const std::string& d2) {
  const DirectSumAlgebra aa = io::algebra_from_json(io::load(a));
  const DirectSumAlgebra bb = io::algebra_from_json(io::load(b));
  const DirectSumAlgebra cc = io::algebra_from_json(io::load(c));
  const KKClass x = canonicalize(io::diagram_from_json(aa, bb, io::load(d1)));
  const KKClass y = canonicalize(io::diagram_from_json(bb, cc, io::load(d2)));
  return {class_to_json(compose(x, y)), true};
}

Outcome run_lift(const std::string& a, const std::string& b, const std::string& d, bool unital) {
  const DirectSumAlgebra src = io::algebra_from_json(io::load(a));
  const DirectSumAlgebra tgt = io::algebra_from_json(io::load(b));
  const KKDiagram x = io::diagram_from_json(src, tgt, io::load(d));
  const LiftDecision dec = unital ? decide_unital_lift(canonicalize(x)) : decide_stable_lift(x);
  Json doc;
  doc["liftable"] = dec.certificate.has_value();
  doc["unital"] = dec.certificate.has_value() && unit_image(x) == k_theory(tgt).unit_class();
  doc["certificate"] = dec.certificate ? io::certificate_to_json(*dec.certificate) : Json(nullptr);
  if (!dec.certificate) doc["reason"] = dec.reason;
  return {doc, dec.certificate.has_value()};
}

HomomorphismData load_hom(const std::string& a, const std::string& b, const std::string& h) {
  const DirectSumAlgebra src = io::algebra_from_json(io::load(a));
  const DirectSumAlgebra tgt = io::algebra_from_json(io::load(b));
  return io::hom_data_from_json(src, tgt, io::load(h));
}

Outcome run_spv(const std::string& a, const std::string& b, const std::string& hd) {
  const HomomorphismData h = load_hom(a, b, hd);
  Json blocks = Json::array();
  for (std::size_t j = 0; j < h.target().size(); ++j) {
    Json row = Json::array();
    for (std::size_t i = 0; i < h.source().size(); ++i) row.push_back(io::rational_to_json(spv_block(h, j, i)));
    blocks.push_back(row);
  }
  return {{{"spv", io::rational_to_json(spv(h))}, {"blocks", blocks}}, true};
}

Outcome run_omega(const std::string& a, const std::string& b, const std::string& hd, const std::string& profiles) {
  const HomomorphismData h = load_hom(a, b, hd);
  const std::vector<PLPath> f =
      profiles.empty() ? std::vector<PLPath>{PLPath::linear(0, 1)} : io::paths_from_json(io::load(profiles));
  const OmegaBounds w = omega_bounds(f, h);
  return {{{"lower", io::rational_to_json(w.lower)},
           {"upper", io::rational_to_json(w.upper)},
           {"spv", io::rational_to_json(w.spv)}},
          true};
}

Outcome run_decomp(const std::string& a, const std::string& b, const std::string& hd, const std::string& tol,
                   const std::string& large) {
  const HomomorphismData h = load_hom(a, b, hd);
  const Rational t = parse_rational(tol);
  const Int l = io::int_from_json(Json(large));
  if (t < 0) throw DomainError("tol must be nonnegative");
  const Decomposition d = split_paths(h, t, l);
  const bool ok = decompose(h, t, l).has_value();
  Json doc = {{"success", ok},
              {"condition_holds", d.condition_holds},
              {"max_displacement", io::rational_to_json(d.max_displacement)},
              {"finite_rank", io::ints_to_json(d.finite_rank)},
              {"corner_rank", io::ints_to_json(d.corner_rank)},
              {"corner", io::hom_data_to_json(d.corner)},
              {"finite_part", io::hom_data_to_json(d.finite_part)}};
  return {doc, ok};
}

Outcome run_system_check(const std::string& sys, long from, long horizon, const std::string& profiles) {
  const InductiveSystem s = io::system_from_json(io::load(sys));
  Json doc = {{"valid", true}, {"stages", s.size()}};
  if (s.size() < 2) {
    doc["report"] = nullptr;
    return {doc, true};
  }
  const std::vector<PLPath> f = profiles.empty() ? std::vector<PLPath>{} : io::paths_from_json(io::load(profiles));
  if (from < 0) throw StageRangeError("from stage must be nonnegative");
  const std::size_t h = horizon < 0 ? s.size() - 1 : static_cast<std::size_t>(horizon);
  const SystemReport r = system_report(s, static_cast<std::size_t>(from), h, f);
  doc["report"] = {{"from_stage", r.from_stage},
                   {"horizon", r.horizon},
                   {"spv", rationals_to_json(r.spv)},
                   {"omega_upper", rationals_to_json(r.omega_upper)},
                   {"proximity", rationals_to_json(r.proximity)},
                   {"composites_consistent", r.composites_consistent},
                   {"decay", r.decay}};
  return {doc, r.composites_consistent};
}

Outcome run_intertwine(const std::string& sa, const std::string& sb, const std::string& seed, long max_stage,
                       long coeff_bound, long min_shift) {
  const InductiveSystem a = io::system_from_json(io::load(sa));
  const InductiveSystem b = io::system_from_json(io::load(sb));
  const std::vector<SeedEntry> entries = io::seed_from_json(a, b, io::load(seed));
  if (coeff_bound < 0) throw InputError("--coeff-bound must be nonnegative");
  if (min_shift < 0) throw InputError("--min-shift must be nonnegative");
  LadderBounds bounds;
  bounds.max_stage = max_stage < 0 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(max_stage);
  bounds.coefficient_bound = coeff_bound;
  bounds.min_shift = static_cast<std::size_t>(min_shift);
  const LadderResult r = ladder_search(a, b, entries, bounds);
  Json doc;
  doc["found"] = r.ladder.has_value();
  if (r.ladder) {
    doc["ladder"] = io::ladder_to_json(*r.ladder);
  } else {
    doc["failing_rung"] = r.failing_rung;
    doc["reason"] = r.reason;
  }
  return {doc, r.ladder.has_value()};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact K-theory, KK and liftability calculus for dimension drop interval algebras", "kkcalc"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit a single JSON document");

  std::function<Outcome()> action;
  std::vector<std::string> pos(5);
  std::vector<std::int64_t> coeffs;
  bool unital = false;
  std::string profiles, tol, large;
  long from = 0, horizon = -1, max_stage = -1, coeff_bound = 10, min_shift = 0;

  auto* kt = app.add_subcommand("kt", "K-theory of an algebra");
  kt->add_option("algebra", pos[0])->required();
  kt->callback([&] { action = [&] { return run_kt(pos[0]); }; });

  auto* tk = app.add_subcommand("totalk", "Total K-theory with coefficients");
  tk->add_option("algebra", pos[0])->required();
  tk->add_option("--coeffs", coeffs, "Coefficients n1,n2,... (default: divisors of KKCALC_COEFF_BOUND)")
      ->delimiter(',');
  tk->callback([&] { action = [&] { return run_totalk(pos[0], coeffs); }; });

  auto* kk = app.add_subcommand("kk", "KK(A, B) as an abelian group");
  kk->add_option("A", pos[0])->required();
  kk->add_option("B", pos[1])->required();
  kk->callback([&] { action = [&] { return run_kk(pos[0], pos[1]); }; });

  auto* canon = app.add_subcommand("canon", "Canonical coordinates of a diagram's class");
  canon->add_option("A", pos[0])->required();
  canon->add_option("B", pos[1])->required();
  canon->add_option("diagram", pos[2])->required();
  canon->callback([&] { action = [&] { return run_canon(pos[0], pos[1], pos[2]); }; });

  auto* comp = app.add_subcommand("compose", "Kasparov product d2 o d1");
  comp->add_option("A", pos[0])->required();
  comp->add_option("B", pos[1])->required();
  comp->add_option("C", pos[2])->required();
  comp->add_option("d1", pos[3])->required();
  comp->add_option("d2", pos[4])->required();
  comp->callback([&] { action = [&] { return run_compose(pos[0], pos[1], pos[2], pos[3], pos[4]); }; });

  auto* lift = app.add_subcommand("lift", "Decide liftability of a class");
  lift->add_option("A", pos[0])->required();
  lift->add_option("B", pos[1])->required();
  lift->add_option("diagram", pos[2])->required();
  lift->add_flag("--unital", unital, "Require the unit condition");
  lift->callback([&] { action = [&] { return run_lift(pos[0], pos[1], pos[2], unital); }; });

  auto* sp = app.add_subcommand("spv", "Spectral variation of homomorphism data");
  sp->add_option("A", pos[0])->required();
  sp->add_option("B", pos[1])->required();
  sp->add_option("homdata", pos[2])->required();
  sp->callback([&] { action = [&] { return run_spv(pos[0], pos[1], pos[2]); }; });

  auto* om = app.add_subcommand("omega", "Weak variation bounds for scalar profiles");
  om->add_option("A", pos[0])->required();
  om->add_option("B", pos[1])->required();
  om->add_option("homdata", pos[2])->required();
  om->add_option("--profiles", profiles, "Profile paths (default: the identity)");
  om->callback([&] { action = [&] { return run_omega(pos[0], pos[1], pos[2], profiles); }; });

  auto* dc = app.add_subcommand("decomp", "Split homomorphism data into a corner and a finite part");
  dc->add_option("A", pos[0])->required();
  dc->add_option("B", pos[1])->required();
  dc->add_option("homdata", pos[2])->required();
  dc->add_option("--tol", tol, "Displacement tolerance p/q")->required();
  dc->add_option("--L", large, "Largeness factor")->required();
  dc->callback([&] { action = [&] { return run_decomp(pos[0], pos[1], pos[2], tol, large); }; });

  auto* sys = app.add_subcommand("system", "Inductive system tools");
  sys->require_subcommand(1);
  auto* check = sys->add_subcommand("check", "Validate a system and report stage diagnostics");
  check->add_option("system", pos[0])->required();
  check->add_option("--from", from, "First stage of the report");
  check->add_option("--horizon", horizon, "Last stage of the report (default: the last stage)");
  check->add_option("--profiles", profiles, "Profile paths for the weak variation bound");
  check->callback([&] { action = [&] { return run_system_check(pos[0], from, horizon, profiles); }; });

  auto* inter = app.add_subcommand("intertwine", "Search for an intertwining ladder");
  inter->add_option("sysA", pos[0])->required();
  inter->add_option("sysB", pos[1])->required();
  inter->add_option("seed", pos[2])->required();
  inter->add_option("--max-stage", max_stage, "Largest stage index used (default: all)");
  inter->add_option("--coeff-bound", coeff_bound, "Coefficient bound of the lattice scan")->capture_default_str();
  inter->add_option("--min-shift", min_shift, "Least offset of each down map's target stage")->capture_default_str();
  inter->callback(
      [&] { action = [&] { return run_intertwine(pos[0], pos[1], pos[2], max_stage, coeff_bound, min_shift); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitAffirmative;
  } catch (const CLI::ParseError& e) {
    err << "kkcalc: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    const Outcome o = action();
    print(o, json, out);
    return o.affirmative ? kExitAffirmative : kExitNegative;
  } catch (const Error& e) {
    err << "kkcalc: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "kkcalc: malformed input: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace kkcalc
