// Independent computation of Hom over the Bockstein operations between total
// K-theories, and the comparison map from the diagram KK group.

#include "kkcalc/errors.hpp"
#include "kkcalc/kk.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace kkcalc {

namespace {

// Total K-theory in invariant-factor coordinates: component groups and the
// Bockstein operations between them.
struct Shape {
  std::vector<FgGroup> groups;
  struct Op {
    std::size_t from, to;
    IntMatrix matrix;
  };
  std::vector<Op> ops;
};

IntMatrix invariant_matrix(const GroupHom& h) {
  const std::size_t rows = h.target.invariant_factors().size();
  const std::size_t cols = h.source.invariant_factors().size();
  IntMatrix m(rows, cols);
  for (std::size_t l = 0; l < cols; ++l) {
    const IntVector y = h.target.coordinates(h.matrix * h.source.generator(l));
    for (std::size_t k = 0; k < rows; ++k) m(k, l) = y[k];
  }
  return m;
}

// Component order: K0, K1, then (K0(;Z_n), K1(;Z_n)) per part.
Shape shape_of(const TotalKModule& t) {
  Shape s;
  s.groups.push_back(t.k0.group);
  s.groups.push_back(t.k1.group);
  std::map<std::int64_t, std::size_t> at;
  for (std::size_t k = 0; k < t.parts.size(); ++k) {
    const auto& p = t.parts[k];
    const std::size_t c0 = 2 + 2 * k, c1 = c0 + 1;
    at[p.n] = c0;
    s.groups.push_back(p.k0.group);
    s.groups.push_back(p.k1.group);
    s.ops.push_back({0, c0, invariant_matrix(p.rho0)});
    s.ops.push_back({c0, 1, invariant_matrix(p.beta0)});
    s.ops.push_back({1, c1, invariant_matrix(p.rho1)});
    s.ops.push_back({c1, 0, invariant_matrix(p.beta1)});
  }
  for (const auto& tr : t.transforms) {
    const std::size_t f = at.at(tr.from), g = at.at(tr.to);
    s.ops.push_back({f, g, invariant_matrix(tr.deg0)});
    s.ops.push_back({f + 1, g + 1, invariant_matrix(tr.deg1)});
  }
  return s;
}

// Hom(Z_d, Z_e) is generated by multiplication by e / gcd(d, e); with e = 0
// only a free source admits nonzero maps.
Int hom_step(const Int& d, const Int& e) {
  if (e == 0) return d == 0 ? Int(1) : Int(0);
  Int g;
  mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
  return e / g;
}

struct HomLambda {
  // Parameter layout: per component x, entries (k, l) of the invariant matrix.
  struct Param {
    std::size_t comp, k, l;
    Int step;
    Int period;  // 0 for a free parameter
  };
  std::vector<Param> params;
  std::vector<std::vector<long>> index;  // per component, k * cols + l -> param or -1
  std::vector<std::size_t> cols;
  IntMatrix lattice;  // rows: basis of admissible parameter vectors
  std::shared_ptr<IntegerSolver> lattice_solver;
  FgGroup group;
};

HomLambda hom_lambda(const Shape& a, const Shape& b) {
  HomLambda h;
  for (std::size_t x = 0; x < a.groups.size(); ++x) {
    const auto& d = a.groups[x].invariant_factors();
    const auto& e = b.groups[x].invariant_factors();
    h.cols.push_back(d.size());
    h.index.emplace_back(e.size() * d.size(), -1);
    for (std::size_t k = 0; k < e.size(); ++k)
      for (std::size_t l = 0; l < d.size(); ++l) {
        const Int step = hom_step(d[l], e[k]);
        if (step == 0) continue;
        Int period = 0;
        if (e[k] != 0) mpz_gcd(period.get_mpz_t(), d[l].get_mpz_t(), e[k].get_mpz_t());
        h.index[x][k * d.size() + l] = static_cast<long>(h.params.size());
        h.params.push_back({x, k, l, step, period});
      }
  }
  const std::size_t np = h.params.size();

  // Commutation with each operation, modulo the target factor.
  std::vector<std::vector<Int>> rows;
  std::vector<Int> slack_mod;
  for (std::size_t o = 0; o < a.ops.size(); ++o) {
    const auto& ga = a.ops[o];
    const auto& gb = b.ops[o];
    const auto& ey = b.groups[ga.to].invariant_factors();
    const std::size_t nl = h.cols[ga.from];
    for (std::size_t k = 0; k < ey.size(); ++k)
      for (std::size_t l = 0; l < nl; ++l) {
        std::vector<Int> row(np);
        // f_to(k, m) * gA(m, l)
        for (std::size_t m = 0; m < ga.matrix.rows(); ++m) {
          const long p = h.index[ga.to][k * h.cols[ga.to] + m];
          if (p >= 0 && ga.matrix(m, l) != 0) row[static_cast<std::size_t>(p)] += h.params[static_cast<std::size_t>(p)].step * ga.matrix(m, l);
        }
        // - gB(k, m) * f_from(m, l)
        for (std::size_t m = 0; m < gb.matrix.cols(); ++m) {
          const long p = h.index[ga.from][m * nl + l];
          if (p >= 0 && gb.matrix(k, m) != 0) row[static_cast<std::size_t>(p)] -= gb.matrix(k, m) * h.params[static_cast<std::size_t>(p)].step;
        }
        bool any = false;
        for (const auto& v : row) any = any || v != 0;
        if (!any) continue;
        rows.push_back(std::move(row));
        slack_mod.push_back(ey[k]);
      }
  }
  std::size_t ns = 0;
  for (const auto& e : slack_mod) ns += e != 0;
  IntMatrix sys(rows.size(), np + ns);
  std::size_t sl = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < np; ++c) sys(r, c) = rows[r][c];
    if (slack_mod[r] != 0) sys(r, np + sl++) = -slack_mod[r];
  }

  IntMatrix gens;
  if (rows.empty()) {
    gens = IntMatrix::identity(np);
  } else {
    const IntMatrix ker = integer_kernel(sys);
    IntMatrix proj(ker.cols(), np);
    for (std::size_t c = 0; c < ker.cols(); ++c)
      for (std::size_t r = 0; r < np; ++r) proj(c, r) = ker(r, c);
    gens = lattice_basis(proj);
  }
  h.lattice = gens;

  // Homs that vanish: parameter shifts by the period.
  h.lattice_solver = std::make_shared<IntegerSolver>(gens.transpose());
  std::vector<IntVector> rel;
  for (std::size_t p = 0; p < np; ++p) {
    if (h.params[p].period == 0) continue;
    IntVector v(np);
    v[p] = h.params[p].period;
    auto y = h.lattice_solver->particular(v);
    if (!y) throw std::logic_error("Hom_Lambda: zero hom is not admissible");
    rel.push_back(std::move(*y));
  }
  h.group = FgGroup(gens.rows(), IntMatrix::from_rows(rel, gens.rows()));
  return h;
}

// Lattice coordinates in Hom_Lambda of the tuple of maps induced by x.
IntVector gamma_image(const HomLambda& h, const InducedTotal& ind) {
  std::vector<const GroupHom*> maps{&ind.k0, &ind.k1};
  for (std::size_t k = 0; k < ind.k0_coeff.size(); ++k) {
    maps.push_back(&ind.k0_coeff[k]);
    maps.push_back(&ind.k1_coeff[k]);
  }
  IntVector t(h.params.size());
  for (std::size_t x = 0; x < maps.size(); ++x) {
    const IntMatrix f = invariant_matrix(*maps[x]);
    for (std::size_t k = 0; k < f.rows(); ++k)
      for (std::size_t l = 0; l < f.cols(); ++l) {
        const long p = h.index[x][k * h.cols[x] + l];
        if (p < 0) {
          if (f(k, l) != 0) throw std::logic_error("Gamma: induced map outside the parameter space");
          continue;
        }
        const Int& step = h.params[static_cast<std::size_t>(p)].step;
        if (f(k, l) % step != 0) throw std::logic_error("Gamma: induced map is not a hom multiple");
        t[static_cast<std::size_t>(p)] = f(k, l) / step;
      }
  }
  auto y = h.lattice_solver->particular(t);
  if (!y) throw std::logic_error("Gamma: induced maps do not commute with the Bockstein operations");
  return *y;
}

std::vector<std::int64_t> ratio_key(const DirectSumAlgebra& a) {
  std::vector<std::int64_t> v;
  for (const auto& b : a.summands()) v.insert(v.end(), {b.ratio0(), b.ratio1()});
  return v;
}

// The computation only depends on the index ratios, so it is done on r = 1
// representatives with the same ratios.
DirectSumAlgebra ratio_model(const DirectSumAlgebra& a) {
  std::vector<DimDropBlock> blocks;
  for (const auto& b : a.summands()) {
    const std::int64_t m = std::lcm(b.ratio0(), b.ratio1());
    blocks.push_back({1, m / b.ratio0(), m, m / b.ratio1()});
  }
  return DirectSumAlgebra(blocks);
}

struct CachedTotal {
  TotalKModule total;
  Shape shape;
};

std::shared_ptr<const CachedTotal> cached_total(const DirectSumAlgebra& a, const std::vector<std::int64_t>& coefficients) {
  using Key = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const CachedTotal>> memo;
  const Key key{ratio_key(a), coefficients};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  auto c = std::make_shared<CachedTotal>();
  c->total = total_k(a, coefficients);
  c->shape = shape_of(c->total);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(key, std::move(c)).first->second;
}

UctReport compute(const DirectSumAlgebra& source, const DirectSumAlgebra& target,
                  const std::vector<std::int64_t>& coefficients) {
  UctReport r;
  r.coefficients = coefficients;
  const auto kk = kk_group(source, target);
  r.free_rank = kk->group().free_rank();
  r.torsion_order = kk->group().torsion_order();
  r.predicted_free_rank = source.size() * target.size();
  r.predicted_torsion_order = 1;
  for (const auto& b : target.summands())
    for (const auto& a : source.summands()) {
      const std::int64_t p = a.k1_order(), q = b.k1_order();
      r.predicted_torsion_order *= p * std::gcd(p, q);
    }

  const auto ta = cached_total(source, coefficients), tb = cached_total(target, coefficients);
  const HomLambda h = hom_lambda(ta->shape, tb->shape);
  r.hom_lambda = h.group;

  const std::size_t n = kk->group().ambient_rank();
  IntMatrix gamma(h.group.ambient_rank(), n);
  for (std::size_t u = 0; u < n; ++u) {
    IntVector e(n);
    e[u] = 1;
    const IntVector y = gamma_image(h, induced_total(kk->from_lattice(e), ta->total, tb->total));
    for (std::size_t k = 0; k < y.size(); ++k) gamma(k, u) = y[k];
  }
  auto induced = hom_check_and_induce(kk->group(), h.group, gamma);
  r.gamma_isomorphism = induced && induced->kernel.is_trivial() && induced->cokernel.is_trivial();
  r.gamma_consistent = r.gamma_isomorphism && r.free_rank == r.predicted_free_rank &&
                       r.torsion_order == r.predicted_torsion_order && same_invariants(kk->group(), h.group);
  return r;
}

}  // namespace

std::vector<std::int64_t> uct_coefficients(const DirectSumAlgebra& source, const DirectSumAlgebra& target) {
  std::int64_t l = 1;
  for (const auto& b : source.summands()) l = std::lcm(l, b.k1_order());
  for (const auto& b : target.summands()) l = std::lcm(l, b.k1_order());
  return coefficient_set(l);
}

UctReport uct_crosscheck(const DirectSumAlgebra& source, const DirectSumAlgebra& target) {
  return uct_crosscheck(source, target, uct_coefficients(source, target));
}

UctReport uct_crosscheck(const DirectSumAlgebra& source, const DirectSumAlgebra& target,
                         const std::vector<std::int64_t>& coefficients) {
  using Key = std::tuple<std::vector<std::int64_t>, std::vector<std::int64_t>, std::vector<std::int64_t>>;
  static std::mutex mu;
  static std::map<Key, UctReport> memo;
  for (auto n : coefficients)
    if (n < 1) throw DomainError("coefficient orders must be positive");
  const Key key{ratio_key(source), ratio_key(target), coefficients};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  UctReport r = compute(ratio_model(source), ratio_model(target), coefficients);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(key, std::move(r)).first->second;
}

}  // namespace kkcalc
