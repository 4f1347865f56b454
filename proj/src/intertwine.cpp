#include "kkcalc/intertwine.hpp"

#include "kkcalc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace kkcalc {

InductiveSystem::InductiveSystem(std::vector<DirectSumAlgebra> stages, std::vector<HomomorphismData> connecting)
    : stages_(std::move(stages)), connecting_(std::move(connecting)) {
  if (stages_.empty()) throw StageRangeError("an inductive system needs at least one stage");
  if (connecting_.size() + 1 != stages_.size())
    throw AlgebraMismatchError(std::to_string(stages_.size()) + " stages need " + std::to_string(stages_.size() - 1) +
                               " connecting maps, got " + std::to_string(connecting_.size()));
  for (std::size_t n = 0; n < connecting_.size(); ++n) {
    const auto& h = connecting_[n];
    if (h.source() != stages_[n] || h.target() != stages_[n + 1])
      throw AlgebraMismatchError("connecting map " + std::to_string(n) + " does not go from stage " +
                                 std::to_string(n) + " to stage " + std::to_string(n + 1));
    if (auto v = hom_data_violation(h, false)) throw HomDataError("connecting map " + std::to_string(n) + ": " + *v);
    step_classes_.push_back(induced_kk(h));
  }
}

const DirectSumAlgebra& InductiveSystem::stage(std::size_t n) const {
  if (n >= stages_.size())
    throw StageRangeError("stage " + std::to_string(n) + " out of range (" + std::to_string(stages_.size()) +
                          " stages)");
  return stages_[n];
}

HomomorphismData InductiveSystem::composite(std::size_t n, std::size_t r) const {
  stage(r);
  if (n > r) throw StageRangeError("no connecting map from stage " + std::to_string(n) + " back to " + std::to_string(r));
  HomomorphismData h = HomomorphismData::identity(stages_[n]);
  for (std::size_t k = n; k < r; ++k) h = compose_hom_data(h, connecting_[k]);
  return h;
}

KKClass InductiveSystem::connecting_class(std::size_t n, std::size_t r) const {
  stage(r);
  if (n > r) throw StageRangeError("no connecting map from stage " + std::to_string(n) + " back to " + std::to_string(r));
  KKClass x = identity_class(stages_[n]);
  for (std::size_t k = n; k < r; ++k) x = compose(x, step_classes_[k]);
  return x;
}

SystemReport system_report(const InductiveSystem& s, std::size_t from_stage, std::size_t horizon,
                           const std::vector<PLPath>& profiles) {
  if (!(from_stage < horizon) || horizon >= s.size())
    throw StageRangeError("report needs from_stage < horizon < " + std::to_string(s.size()) + ", got " +
                          std::to_string(from_stage) + " and " + std::to_string(horizon));
  const std::vector<PLPath> f = profiles.empty() ? std::vector<PLPath>{PLPath::linear(0, 1)} : profiles;
  SystemReport rep;
  rep.from_stage = from_stage;
  rep.horizon = horizon;
  HomomorphismData nu = HomomorphismData::identity(s.stage(from_stage));
  for (std::size_t r = from_stage + 1; r <= horizon; ++r) {
    nu = compose_hom_data(nu, s.connecting()[r - 1]);
    const OmegaBounds w = omega_bounds(f, nu);
    rep.spv.push_back(w.spv);
    rep.omega_upper.push_back(w.upper);
    Rational worst = 0;
    for (const auto& row : nu.blocks())
      for (const auto& b : row)
        for (const auto& p : b.paths) worst = std::max(worst, Rational((p.max_value() - p.min_value()) / 2));
    rep.proximity.push_back(worst);
    if (!(induced_kk(nu) == s.connecting_class(from_stage, r))) rep.composites_consistent = false;
  }
  bool monotone = true;
  for (std::size_t k = 1; k < rep.spv.size(); ++k)
    if (rep.spv[k] > rep.spv[k - 1]) monotone = false;
  rep.decay = monotone && (rep.spv.back() < rep.spv.front() || rep.spv.back() == 0);
  return rep;
}

namespace {

std::vector<std::int64_t> coefficients_for(const KElement& x) {
  if (x.coefficient < 0) throw InputError("coefficient must be 0 (integral) or at least 2");
  if (x.coefficient == 1) throw InputError("coefficient 1 gives the zero group; use 0 for integral K-theory");
  if (x.coefficient == 0) return {};
  return {x.coefficient};
}

const Homology& component(const TotalKModule& t, const KElement& x) {
  if (x.degree != 0 && x.degree != 1) throw InputError("degree must be 0 or 1");
  if (x.coefficient == 0) return x.degree == 0 ? t.k0 : t.k1;
  return x.degree == 0 ? t.part(x.coefficient).k0 : t.part(x.coefficient).k1;
}

const GroupHom& component(const InducedTotal& m, const KElement& x) {
  if (x.coefficient == 0) return x.degree == 0 ? m.k0 : m.k1;
  return x.degree == 0 ? m.k0_coeff.at(0) : m.k1_coeff.at(0);
}

void check_coords(const TotalKModule& t, const KElement& x) {
  const Homology& h = component(t, x);
  if (x.coords.size() != h.group.ambient_rank()) {
    std::ostringstream os;
    os << "element at stage " << x.stage << " has " << x.coords.size() << " coordinates, expected "
       << h.group.ambient_rank();
    throw InputError(os.str());
  }
}

}  // namespace

KElement push_forward(const InductiveSystem& s, const KElement& x, std::size_t to_stage) {
  s.stage(to_stage);
  if (to_stage < x.stage) throw StageRangeError("cannot push an element back to an earlier stage");
  const auto coeffs = coefficients_for(x);
  TotalKModule cur = total_k(s.stage(x.stage), coeffs);
  check_coords(cur, x);
  KElement out = x;
  for (std::size_t k = x.stage; k < to_stage; ++k) {
    TotalKModule next = total_k(s.stage(k + 1), coeffs);
    const InducedTotal m = induced_total(induced_diagram(s.connecting()[k]), cur, next);
    out.coords = component(m, x).apply(out.coords);
    out.stage = k + 1;
    cur = std::move(next);
  }
  return out;
}

LimitVerdict limit_compare(const InductiveSystem& s, const KElement& x, const KElement& y, std::size_t horizon) {
  s.stage(x.stage);
  s.stage(y.stage);
  s.stage(horizon);
  if (x.degree != y.degree || x.coefficient != y.coefficient)
    throw InputError("elements live in different components of total K-theory");
  const std::size_t start = std::max(x.stage, y.stage);
  if (horizon < start) throw StageRangeError("horizon precedes the stages of the elements");
  KElement a = push_forward(s, x, start), b = push_forward(s, y, start);
  const auto coeffs = coefficients_for(x);
  for (std::size_t k = start;; ++k) {
    const TotalKModule t = total_k(s.stage(k), coeffs);
    if (component(t, a).group.equal(a.coords, b.coords)) return {true, k};
    if (k == horizon) return {false, horizon};
    a = push_forward(s, a, k + 1);
    b = push_forward(s, b, k + 1);
  }
}

void check_seed(const InductiveSystem& a, const InductiveSystem& b, const std::vector<SeedEntry>& seed) {
  if (seed.empty()) throw SeedIncompatibleError("empty seed");
  for (std::size_t k = 0; k < seed.size(); ++k) {
    const SeedEntry& e = seed[k];
    if (e.source_stage >= a.size() || e.target_stage >= b.size())
      throw SeedIncompatibleError("seed entry " + std::to_string(k) + " refers to a missing stage");
    if (e.cls.source() != a.stage(e.source_stage) || e.cls.target() != b.stage(e.target_stage))
      throw SeedIncompatibleError("seed entry " + std::to_string(k) + " does not map stage " +
                                  std::to_string(e.source_stage) + " to stage " + std::to_string(e.target_stage));
    if (k == 0) continue;
    const SeedEntry& p = seed[k - 1];
    if (e.source_stage <= p.source_stage || e.target_stage < p.target_stage)
      throw SeedIncompatibleError("seed stages must increase");
    // psi o alpha_i = alpha_j o phi on A_i -> B_{t(j)}.
    const KKClass lhs = compose(p.cls, b.connecting_class(p.target_stage, e.target_stage));
    const KKClass rhs = compose(a.connecting_class(p.source_stage, e.source_stage), e.cls);
    if (!(lhs == rhs))
      throw SeedIncompatibleError("seed entries " + std::to_string(k - 1) + " and " + std::to_string(k) +
                                  " do not commute with the connecting maps");
  }
}

std::optional<std::string> ladder_violation(const InductiveSystem& a, const InductiveSystem& b, const Ladder& l) {
  const std::size_t n = l.down.size();
  if (l.source_stages.size() != n || l.target_stages.size() != n || l.down_certificates.size() != n)
    return "inconsistent rung counts";
  if (l.up.size() + 1 != n || l.up_certificates.size() + 1 != n) return "expected one up map fewer than down maps";
  for (std::size_t k = 0; k < n; ++k) {
    const std::string rung = "rung " + std::to_string(k);
    if (k > 0 && (l.source_stages[k] <= l.source_stages[k - 1] || l.target_stages[k] <= l.target_stages[k - 1]))
      return rung + ": stage indices must increase";
    const KKClass& rho = l.down[k];
    if (rho.source() != a.stage(l.source_stages[k]) || rho.target() != b.stage(l.target_stages[k]))
      return rung + ": down map has the wrong stages";
    if (!(induced_kk(realize(l.down_certificates[k].shifted)) == rho)) return rung + ": down certificate mismatch";
    if (!local_existence(rho)) return rung + ": down map not liftable";
    if (k + 1 == n) break;
    const KKClass& sigma = l.up[k];
    if (sigma.source() != b.stage(l.target_stages[k]) || sigma.target() != a.stage(l.source_stages[k + 1]))
      return rung + ": up map has the wrong stages";
    if (!(induced_kk(realize(l.up_certificates[k].shifted)) == sigma)) return rung + ": up certificate mismatch";
    if (!local_existence(sigma)) return rung + ": up map not liftable";
    if (!(compose(rho, sigma) == a.connecting_class(l.source_stages[k], l.source_stages[k + 1])))
      return rung + ": sigma o rho differs from the connecting class of the first system";
    if (!(compose(sigma, l.down[k + 1]) == b.connecting_class(l.target_stages[k], l.target_stages[k + 1])))
      return rung + ": rho o sigma differs from the connecting class of the second system";
  }
  return std::nullopt;
}

namespace {

struct Rung {
  KKClass cls;
  LiftCertificate cert;
};

std::optional<Rung> liftable_rung(const KKClass& x) {
  ExistenceResult r = local_existence_report(x);
  if (!r.certificate) return std::nullopt;
  return Rung{x, *r.certificate};
}

const SeedEntry* seed_at(const std::vector<SeedEntry>& seed, std::size_t stage) {
  for (const auto& e : seed)
    if (e.source_stage == stage) return &e;
  return nullptr;
}

// All c in [-k, k]^h with max |c| = k, in lexicographic order.
void shell(std::size_t h, long k, std::vector<std::vector<long>>& out) {
  std::vector<long> c(h, -k);
  if (h == 0) {
    if (k == 0) out.push_back(c);
    return;
  }
  while (true) {
    long m = 0;
    for (long v : c) m = std::max(m, std::labs(v));
    if (m == k) out.push_back(c);
    std::size_t i = h;
    while (i > 0 && c[i - 1] == k) c[--i] = -k;
    if (i == 0) break;
    ++c[i - 1];
  }
}

enum class SolveOutcome { Found, NoLinearSolution, NoLiftableSolution };

// sigma : B_s -> A_r with sigma o rho = phi and rho_next o sigma = psi.
SolveOutcome solve_up(const KKClass& rho, const KKClass& rho_next, const KKClass& phi, const KKClass& psi,
                      long bound, std::optional<Rung>& found) {
  const auto unknown = kk_group(rho.target(), phi.target());
  const auto t1 = kk_group(phi.source(), phi.target());
  const auto t2 = kk_group(psi.source(), psi.target());
  const std::size_t nz = unknown->group().ambient_rank();
  const IntMatrix& r1 = t1->group().relations();
  const IntMatrix& r2 = t2->group().relations();
  const std::size_t a1 = t1->group().ambient_rank(), a2 = t2->group().ambient_rank();
  IntMatrix m(a1 + a2, nz + r1.rows() + r2.rows());
  for (std::size_t k = 0; k < nz; ++k) {
    IntVector e(nz, 0);
    e[k] = 1;
    const KKDiagram xi = unknown->from_lattice(e);
    const IntVector c1 = t1->lattice_coordinates(compose_diagrams(rho.representative, xi));
    const IntVector c2 = t2->lattice_coordinates(compose_diagrams(xi, rho_next.representative));
    for (std::size_t i = 0; i < a1; ++i) m(i, k) = c1[i];
    for (std::size_t i = 0; i < a2; ++i) m(a1 + i, k) = c2[i];
  }
  for (std::size_t l = 0; l < r1.rows(); ++l)
    for (std::size_t i = 0; i < a1; ++i) m(i, nz + l) = -r1(l, i);
  for (std::size_t l = 0; l < r2.rows(); ++l)
    for (std::size_t i = 0; i < a2; ++i) m(a1 + i, nz + r1.rows() + l) = -r2(l, i);
  IntVector rhs = t1->lattice_coordinates(phi.representative);
  for (const Int& v : t2->lattice_coordinates(psi.representative)) rhs.push_back(v);
  const auto sol = solve_integer(m, rhs);
  if (!sol) return SolveOutcome::NoLinearSolution;

  // Move to invariant-factor coordinates of KK(B_s, A_r): torsion first, free last.
  auto z_part = [&](const IntVector& v) { return IntVector(v.begin(), v.begin() + static_cast<long>(nz)); };
  const FgGroup& g = unknown->group();
  const std::vector<Int>& factors = g.invariant_factors();
  const std::size_t dim = factors.size();
  std::size_t torsion = 0;
  while (torsion < dim && factors[torsion] != 0) ++torsion;
  const IntVector p = unknown->canonical(unknown->from_lattice(z_part(sol->particular)));
  std::vector<IntVector> gens;
  for (const auto& k : sol->kernel_basis) gens.push_back(unknown->canonical(unknown->from_lattice(z_part(k))));

  IntMatrix torsion_rel(torsion, dim);
  for (std::size_t i = 0; i < torsion; ++i) torsion_rel(i, i) = factors[i];
  const FgGroup coord_group(dim, torsion_rel);
  const IntMatrix gen_cols = IntMatrix::from_columns(gens, dim);

  std::vector<IntVector> free_rows;
  for (const auto& v : gens) free_rows.emplace_back(v.begin() + static_cast<long>(torsion), v.end());
  std::vector<IntVector> free_basis;
  if (!free_rows.empty() && dim > torsion) {
    const IntMatrix fb = lattice_basis(IntMatrix::from_rows(free_rows, dim - torsion));
    for (std::size_t i = 0; i < fb.rows(); ++i)
      if (!is_zero(fb.row(i))) free_basis.push_back(fb.row(i));
  }

  std::vector<IntVector> torsion_points{IntVector{}};
  for (std::size_t i = 0; i < torsion; ++i) {
    std::vector<IntVector> next;
    for (const auto& t : torsion_points)
      for (Int v = 0; v < factors[i]; ++v) {
        IntVector u = t;
        u.push_back(v);
        next.push_back(std::move(u));
      }
    torsion_points = std::move(next);
  }

  for (long k = 0; k <= bound; ++k) {
    std::vector<std::vector<long>> cs;
    shell(free_basis.size(), k, cs);
    for (const auto& c : cs) {
      IntVector free(p.begin() + static_cast<long>(torsion), p.end());
      for (std::size_t i = 0; i < c.size(); ++i) free = add(free, scale(c[i], free_basis[i]));
      for (const auto& t : torsion_points) {
        IntVector coords = t;
        coords.insert(coords.end(), free.begin(), free.end());
        if (!in_subgroup(coord_group, gen_cols, subtract(coords, p))) continue;
        const KKClass x = canonicalize(unknown->section(coords));
        if (!(compose(rho, x) == phi) || !(compose(x, rho_next) == psi))
          throw std::logic_error("ladder_search: lattice point violates the linear system");
        if (auto r = liftable_rung(x)) {
          found = std::move(r);
          return SolveOutcome::Found;
        }
      }
    }
  }
  return SolveOutcome::NoLiftableSolution;
}

}  // namespace

LadderResult ladder_search(const InductiveSystem& a, const InductiveSystem& b, const std::vector<SeedEntry>& seed,
                           const LadderBounds& bounds) {
  check_seed(a, b, seed);
  const std::size_t max_a = std::min(bounds.max_stage, a.size() - 1);
  const std::size_t max_b = std::min(bounds.max_stage, b.size() - 1);
  LadderResult out;
  Ladder l;

  // rho at source stage r, landing at the first liftable target stage >= lo.
  auto down_at = [&](std::size_t r, std::size_t lo, std::size_t s) -> std::optional<Rung> {
    const SeedEntry* e = seed_at(seed, r);
    if (!e || s < lo || s < e->target_stage + bounds.min_shift) return std::nullopt;
    return liftable_rung(compose(e->cls, b.connecting_class(e->target_stage, s)));
  };

  const std::size_t r1 = seed.front().source_stage;
  std::optional<Rung> first;
  std::size_t s1 = 0;
  for (std::size_t s = seed.front().target_stage + bounds.min_shift; s <= max_b && !first; ++s)
    if ((first = down_at(r1, 0, s))) s1 = s;
  if (r1 > max_a || !first) {
    out.failing_rung = 0;
    out.reason = "rung 0: the seed is not liftable at any target stage up to " + std::to_string(max_b);
    return out;
  }
  l.source_stages.push_back(r1);
  l.target_stages.push_back(s1);
  l.down.push_back(first->cls);
  l.down_certificates.push_back(first->cert);

  while (true) {
    const std::size_t rn = l.source_stages.back(), sn = l.target_stages.back();
    bool any_candidate = false, any_linear = false, any_down = false;
    std::optional<Rung> up, down;
    std::size_t next_r = 0, next_s = 0;
    for (std::size_t r = rn + 1; r <= max_a && !up; ++r) {
      const SeedEntry* e = seed_at(seed, r);
      if (!e) continue;
      for (std::size_t s = std::max(sn + 1, e->target_stage + bounds.min_shift); s <= max_b && !up; ++s) {
        any_candidate = true;
        auto d = down_at(r, sn + 1, s);
        if (!d) continue;
        any_down = true;
        std::optional<Rung> found;
        const SolveOutcome o =
            solve_up(l.down.back(), d->cls, a.connecting_class(rn, r), b.connecting_class(sn, s), bounds.coefficient_bound, found);
        if (o == SolveOutcome::NoLinearSolution) continue;
        any_linear = true;
        if (o == SolveOutcome::Found) {
          up = std::move(found);
          down = std::move(d);
          next_r = r;
          next_s = s;
        }
      }
    }
    if (!any_candidate) break;
    if (!up) {
      out.failing_rung = l.down.size();
      const std::string rung = "rung " + std::to_string(out.failing_rung) + ": ";
      if (!any_down)
        out.reason = rung + "no liftable down map within the stage bound";
      else if (!any_linear)
        out.reason = rung + "no ξ solves linear system";
      else
        out.reason = rung + "no liftable ξ within coefficient bound " + std::to_string(bounds.coefficient_bound);
      return out;
    }
    l.up.push_back(up->cls);
    l.up_certificates.push_back(up->cert);
    l.source_stages.push_back(next_r);
    l.target_stages.push_back(next_s);
    l.down.push_back(down->cls);
    l.down_certificates.push_back(down->cert);
  }
  if (l.up.empty()) {
    out.failing_rung = 1;
    out.reason = "stage bound leaves no room for a second rung";
    return out;
  }
  if (auto v = ladder_violation(a, b, l)) throw std::logic_error("ladder_search produced an invalid ladder: " + *v);
  out.ladder = std::move(l);
  return out;
}

}  // namespace kkcalc
