#include "kkcalc/spectral.hpp"

#include "kkcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace kkcalc {

HomomorphismData::HomomorphismData(DirectSumAlgebra source, DirectSumAlgebra target,
                                   std::vector<std::vector<BlockHomData>> blocks)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {}

HomomorphismData HomomorphismData::identity(const DirectSumAlgebra& a) {
  std::vector<std::vector<BlockHomData>> b(a.size(), std::vector<BlockHomData>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) b[i][i].paths.push_back(PLPath::linear(0, 1));
  return HomomorphismData(a, a, std::move(b));
}

std::size_t HomomorphismData::path_count() const {
  std::size_t n = 0;
  for (const auto& row : blocks_)
    for (const auto& b : row) n += b.paths.size();
  return n;
}

std::vector<Int> unit_image_size(const HomomorphismData& h) {
  std::vector<Int> out;
  for (std::size_t j = 0; j < h.target().size(); ++j) {
    Int total = 0;
    for (std::size_t i = 0; i < h.source().size(); ++i) {
      const auto& a = h.source()[i];
      const auto& b = h.at(j, i);
      total += Int(a.r) * (Int(b.s0) * a.m0 + Int(b.s1) * a.m1 + Int(static_cast<long>(b.paths.size())) * a.m);
    }
    out.push_back(total);
  }
  return out;
}

bool is_unital(const HomomorphismData& h) {
  const auto sizes = unit_image_size(h);
  for (std::size_t j = 0; j < sizes.size(); ++j)
    if (sizes[j] != Int(h.target()[j].eff_m())) return false;
  return true;
}

namespace {

std::string pair_name(std::size_t j, std::size_t i) {
  return "block [" + std::to_string(j) + "][" + std::to_string(i) + "]";
}

// Multiplicities of the fiber of one block pair at an endpoint of the
// target: endpoint-0 reps, endpoint-1 reps, and point evaluations at
// interior values.
struct EndpointFiber {
  Int delta0;
  Int delta1;
  std::map<Rational, Int> interior;
};

EndpointFiber endpoint_fiber(const DimDropBlock& src, const BlockHomData& b, bool at_one) {
  EndpointFiber f;
  f.delta0 = b.s0;
  f.delta1 = b.s1;
  for (const auto& p : b.paths) {
    const Rational x = at_one ? p.at1() : p.at0();
    if (x == 0)
      f.delta0 += src.ratio0();
    else if (x == 1)
      f.delta1 += src.ratio1();
    else
      f.interior[x] += 1;
  }
  return f;
}

}  // namespace

std::optional<std::string> structure_violation(const HomomorphismData& h) {
  const auto& A = h.source();
  const auto& B = h.target();
  if (h.blocks().size() != B.size())
    return "expected " + std::to_string(B.size()) + " target rows, got " + std::to_string(h.blocks().size());
  for (std::size_t j = 0; j < B.size(); ++j) {
    if (h.blocks()[j].size() != A.size())
      return "target row " + std::to_string(j) + " has " + std::to_string(h.blocks()[j].size()) +
             " entries, expected " + std::to_string(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
      const auto& b = h.at(j, i);
      const auto& a = A[i];
      if (b.s0 < 0 || b.s0 > a.ratio0() - 1)
        return pair_name(j, i) + ": s0 = " + std::to_string(b.s0) + " outside 0..m/m0-1 = " +
               std::to_string(a.ratio0() - 1) + " (the strict standard-form range; s0 = m/m0 is one more path)";
      if (b.s1 < 0 || b.s1 > a.ratio1() - 1)
        return pair_name(j, i) + ": s1 = " + std::to_string(b.s1) + " outside 0..m/m1-1 = " +
               std::to_string(a.ratio1() - 1) + " (the strict standard-form range; s1 = m/m1 is one more path)";
      for (std::size_t k = 0; k < b.paths.size(); ++k)
        if (b.paths[k].min_value() < 0 || b.paths[k].max_value() > 1)
          return pair_name(j, i) + ": path " + std::to_string(k) + " leaves [0,1]";
      for (int e = 0; e < 2; ++e) {
        const Int copies = e == 0 ? B[j].ratio0() : B[j].ratio1();
        const EndpointFiber f = endpoint_fiber(a, b, e == 1);
        auto bad = [&](const Int& c, const std::string& what) -> std::optional<std::string> {
          if (c % copies == 0) return std::nullopt;
          std::ostringstream os;
          os << pair_name(j, i) << ": at t=" << e << " the multiplicity " << c << " of " << what
             << " is not divisible by " << copies << " = n/n" << e;
          return os.str();
        };
        if (auto v = bad(f.delta0, "the endpoint-0 representation")) return v;
        if (auto v = bad(f.delta1, "the endpoint-1 representation")) return v;
        for (const auto& [x, c] : f.interior)
          if (auto v = bad(c, "the point evaluation at " + to_string(x))) return v;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> hom_data_violation(const HomomorphismData& h, bool unital) {
  if (auto v = structure_violation(h)) return v;
  const auto& B = h.target();
  const auto sizes = unit_image_size(h);
  for (std::size_t j = 0; j < B.size(); ++j) {
    const Int cap = B[j].eff_m();
    if (sizes[j] > cap || (unital && sizes[j] != cap)) {
      std::ostringstream os;
      os << "target block " << j << ": unit image has size " << sizes[j] << (unital ? ", expected " : ", exceeds ")
         << cap;
      return os.str();
    }
  }
  return std::nullopt;
}

HomomorphismData validate_hom_data(const DirectSumAlgebra& source, const DirectSumAlgebra& target,
                                   std::vector<std::vector<BlockHomData>> blocks, bool unital) {
  HomomorphismData h(source, target, std::move(blocks));
  if (auto v = hom_data_violation(h, unital)) throw HomDataError(*v);
  return h;
}

SpectrumSnapshot spectrum_at(const HomomorphismData& h, std::size_t target, std::size_t source, const Rational& t) {
  if (t < 0 || t > 1) throw DomainError("parameter " + to_string(t) + " outside [0,1]");
  const auto& b = h.at(target, source);
  SpectrumSnapshot s{t, b.s0, b.s1, {}};
  for (const auto& p : b.paths) s.interior_points.push_back(p(t));
  std::sort(s.interior_points.begin(), s.interior_points.end());
  return s;
}

std::vector<std::vector<SpectrumSnapshot>> spectrum_at(const HomomorphismData& h, const Rational& t) {
  std::vector<std::vector<SpectrumSnapshot>> out(h.target().size());
  for (std::size_t j = 0; j < h.target().size(); ++j)
    for (std::size_t i = 0; i < h.source().size(); ++i) out[j].push_back(spectrum_at(h, j, i, t));
  return out;
}

HomomorphismData compose_hom_data(const HomomorphismData& f, const HomomorphismData& g) {
  if (f.target() != g.source())
    throw AlgebraMismatchError("cannot compose homomorphism data: " + f.target().describe() + " vs " +
                               g.source().describe());
  const auto& A = f.source();
  const auto& B = f.target();
  const auto& C = g.target();
  std::vector<std::vector<BlockHomData>> out(C.size(), std::vector<BlockHomData>(A.size()));
  for (std::size_t k = 0; k < C.size(); ++k)
    for (std::size_t i = 0; i < A.size(); ++i) {
      Int d0 = 0, d1 = 0;
      std::vector<PLPath> paths;
      for (std::size_t j = 0; j < B.size(); ++j) {
        const auto& fb = f.at(j, i);
        const auto& gb = g.at(k, j);
        for (const auto& gamma : gb.paths) {
          d0 += fb.s0;
          d1 += fb.s1;
          for (const auto& phi : fb.paths) paths.push_back(phi.after(gamma));
        }
        // Endpoint representations of B_j pull back one of the n/n0 (n/n1)
        // identical copies of f at that endpoint.
        for (int e = 0; e < 2; ++e) {
          const std::int64_t copies = e == 0 ? gb.s0 : gb.s1;
          if (copies == 0) continue;
          const Int share = e == 0 ? B[j].ratio0() : B[j].ratio1();
          const EndpointFiber fib = endpoint_fiber(A[i], fb, e == 1);
          d0 += copies * (fib.delta0 / share);
          d1 += copies * (fib.delta1 / share);
          for (const auto& [x, c] : fib.interior)
            for (Int n = 0; n < copies * (c / share); ++n) paths.push_back(PLPath::constant(x));
        }
      }
      BlockHomData& ob = out[k][i];
      const Int a0 = A[i].ratio0(), a1 = A[i].ratio1();
      ob.s0 = Int(d0 % a0).get_si();
      ob.s1 = Int(d1 % a1).get_si();
      for (Int n = 0; n < d0 / a0; ++n) paths.push_back(PLPath::constant(0));
      for (Int n = 0; n < d1 / a1; ++n) paths.push_back(PLPath::constant(1));
      ob.paths = std::move(paths);
    }
  return HomomorphismData(A, C, std::move(out));
}

Rational matching_distance(std::vector<Rational> x, std::vector<Rational> y) {
  if (x.size() != y.size()) throw DomainError("matching distance needs multisets of equal size");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  Rational d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, Rational(abs(x[i] - y[i])));
  return d;
}

Rational variation(const std::vector<WeightedPath>& input, int grid) {
  // Merge identical paths.
  std::vector<WeightedPath> paths;
  for (const auto& p : input) {
    if (p.weight <= 0) continue;
    auto it = std::find_if(paths.begin(), paths.end(), [&](const WeightedPath& q) { return q.path == p.path; });
    if (it == paths.end())
      paths.push_back(p);
    else
      it->weight += p.weight;
  }
  if (paths.empty()) return 0;

  // Between consecutive candidate times every order statistic is linear.
  std::vector<Rational> ts{0, 1};
  for (const auto& p : paths)
    for (const auto& t : p.path.breakpoints()) ts.push_back(t);
  for (std::size_t a = 0; a < paths.size(); ++a)
    for (std::size_t b = a + 1; b < paths.size(); ++b)
      for (const auto& t : crossings(paths[a].path, paths[b].path)) ts.push_back(t);
  for (int k = 1; k < grid; ++k) {
    ts.push_back(Rational(k, grid));
    ts.back().canonicalize();
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<std::vector<std::pair<Rational, Int>>> sorted;
  std::vector<Int> cuts;
  for (const auto& t : ts) {
    std::vector<std::pair<Rational, Int>> v;
    for (const auto& p : paths) v.emplace_back(p.path(t), p.weight);
    std::sort(v.begin(), v.end());
    Int cum = 0;
    for (const auto& [val, w] : v) {
      cuts.push_back(cum);
      cum += w;
    }
    sorted.push_back(std::move(v));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Rational best = 0;
  std::vector<std::size_t> pos(ts.size(), 0);
  std::vector<Int> start(ts.size(), 0);
  for (const Int& u : cuts) {
    Rational lo, hi;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      auto& v = sorted[k];
      while (start[k] + v[pos[k]].second <= u) {
        start[k] += v[pos[k]].second;
        ++pos[k];
      }
      const Rational& x = v[pos[k]].first;
      if (k == 0 || x < lo) lo = x;
      if (k == 0 || x > hi) hi = x;
    }
    best = std::max(best, Rational(hi - lo));
  }
  return best;
}

Rational spv_block(const HomomorphismData& h, std::size_t target, std::size_t source, int grid) {
  std::vector<WeightedPath> w;
  for (const auto& p : h.at(target, source).paths) w.push_back({p, 1});
  return variation(w, grid);
}

Rational spv(const HomomorphismData& h, int grid) {
  Rational best = 0;
  for (std::size_t j = 0; j < h.target().size(); ++j)
    for (std::size_t i = 0; i < h.source().size(); ++i) best = std::max(best, spv_block(h, j, i, grid));
  return best;
}

OmegaBounds omega_bounds(const std::vector<PLPath>& profiles, const HomomorphismData& h, int grid) {
  OmegaBounds out;
  out.spv = spv(h, grid);
  out.lower = 0;
  out.upper = 0;
  for (const auto& f : profiles) {
    out.upper = std::max(out.upper, modulus_of_continuity(f, out.spv));
    for (std::size_t j = 0; j < h.target().size(); ++j) {
      std::vector<WeightedPath> w;
      for (std::size_t i = 0; i < h.source().size(); ++i) {
        const auto& a = h.source()[i];
        const auto& b = h.at(j, i);
        if (b.s0 > 0) w.push_back({PLPath::constant(f(0)), Int(a.r) * a.m0 * b.s0});
        if (b.s1 > 0) w.push_back({PLPath::constant(f(1)), Int(a.r) * a.m1 * b.s1});
        for (const auto& p : b.paths) w.push_back({f.after(p), Int(a.r) * a.m});
      }
      out.lower = std::max(out.lower, variation(w, grid));
    }
  }
  return out;
}

Decomposition split_paths(const HomomorphismData& h, const Rational& tol, const Int& large) {
  if (tol < 0) throw DomainError("tolerance must be nonnegative");
  if (large < 1) throw DomainError("L must be a positive integer");
  const auto& A = h.source();
  const auto& B = h.target();
  std::vector<std::vector<BlockHomData>> corner(B.size(), std::vector<BlockHomData>(A.size()));
  std::vector<std::vector<BlockHomData>> finite(B.size(), std::vector<BlockHomData>(A.size()));
  Decomposition d;
  d.max_displacement = 0;
  const Rational half(1, 2);
  for (std::size_t j = 0; j < B.size(); ++j) {
    Int fr = 0, cr = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
      const auto& b = h.at(j, i);
      finite[j][i].s0 = b.s0;
      finite[j][i].s1 = b.s1;
      for (const auto& p : b.paths) {
        const Rational mid = p(half);
        const Rational moved = std::max(Rational(p.max_value() - mid), Rational(mid - p.min_value()));
        if (p.total_variation() <= 2 * tol && moved <= tol) {
          finite[j][i].paths.push_back(PLPath::constant(mid));
          d.max_displacement = std::max(d.max_displacement, moved);
        } else {
          corner[j][i].paths.push_back(p);
        }
      }
      const auto& a = A[i];
      fr += Int(a.r) * (Int(b.s0) * a.m0 + Int(b.s1) * a.m1 + Int(static_cast<long>(finite[j][i].paths.size())) * a.m);
      cr += Int(a.r) * Int(static_cast<long>(corner[j][i].paths.size())) * a.m;
    }
    d.finite_rank.push_back(fr);
    d.corner_rank.push_back(cr);
  }
  d.condition_holds = true;
  for (std::size_t j = 0; j < B.size(); ++j)
    if (d.finite_rank[j] < large * d.corner_rank[j]) d.condition_holds = false;
  d.corner = HomomorphismData(A, B, std::move(corner));
  d.finite_part = HomomorphismData(A, B, std::move(finite));
  return d;
}

std::optional<Decomposition> decompose(const HomomorphismData& h, const Rational& tol, const Int& large) {
  Decomposition d = split_paths(h, tol, large);
  if (!d.condition_holds) return std::nullopt;
  return d;
}

void validate_rep(const FiniteDimRep& rep, const DimDropBlock& source, const DimDropBlock& target) {
  if (rep.k1 < 0 || rep.k2 < 0) throw DomainError("representation multiplicities must be nonnegative");
  if (rep.unital && Int(source.r) * (Int(source.m0) * rep.k1 + Int(source.m1) * rep.k2) != target.r) {
    std::ostringstream os;
    os << "representation (" << rep.k1 << "," << rep.k2 << ") is marked unital but r(m0 k1 + m1 k2) = "
       << Int(Int(source.r) * (Int(source.m0) * rep.k1 + Int(source.m1) * rep.k2)) << " differs from " << target.r;
    throw DomainError(os.str());
  }
}

std::string to_string(MatchReport::Kind k) {
  switch (k) {
    case MatchReport::Kind::Equivalent: return "equivalent";
    case MatchReport::Kind::Dominated: return "dominated";
    case MatchReport::Kind::Transfer: return "transfer";
  }
  return "?";
}

namespace {

std::optional<MatchReport> try_match(const FiniteDimRep& x, const FiniteDimRep& y, const DimDropBlock& s,
                                     const DimDropBlock& t) {
  MatchReport r;
  r.lam = x;
  r.lam2 = y;
  if (x.k1 == y.k1 && x.k2 == y.k2) {
    r.kind = MatchReport::Kind::Equivalent;
    return r;
  }
  if (x.unital && x.k1 >= y.k1 && x.k2 >= y.k2) {
    r.kind = MatchReport::Kind::Dominated;
    r.eta = FiniteDimRep{x.k1 - y.k1, x.k2 - y.k2, false};
    return r;
  }
  // (k1 - k1') g = l m/m0 and (k2' - k2) g = l m/m1 with g = gcd(n0, n1).
  const Int g = std::gcd(t.m0, t.m1);
  const Int lhs0 = (x.k1 - y.k1) * g, lhs1 = (y.k2 - x.k2) * g;
  const Int a0 = s.ratio0(), a1 = s.ratio1();
  if (lhs0 % a0 != 0 || lhs1 % a1 != 0) return std::nullopt;
  if (lhs0 / a0 != lhs1 / a1) return std::nullopt;
  r.kind = MatchReport::Kind::Transfer;
  r.l = lhs0 / a0;
  return r;
}

}  // namespace

MatchReport finite_rep_match(const FiniteDimRep& lam, const FiniteDimRep& lam2, const DimDropBlock& source,
                             const DimDropBlock& target) {
  validate_rep(lam, source, target);
  validate_rep(lam2, source, target);
  if (auto r = try_match(lam, lam2, source, target)) return *r;
  // Reduce the endpoint-0 multiplicities into 0..m/m0-1 and retry.
  const Int a0 = source.ratio0();
  auto reduce = [&](const FiniteDimRep& x) {
    Int k;
    mpz_fdiv_r(k.get_mpz_t(), x.k1.get_mpz_t(), a0.get_mpz_t());
    return FiniteDimRep{k, x.k2, false};
  };
  const FiniteDimRep x = reduce(lam), y = reduce(lam2);
  if (x.k1 != lam.k1 || y.k1 != lam2.k1) {
    if (auto r = try_match(x, y, source, target)) {
      r->range_reduced = true;
      return *r;
    }
  }
  std::ostringstream os;
  os << "representations (" << lam.k1 << "," << lam.k2 << ") and (" << lam2.k1 << "," << lam2.k2
     << ") are neither equivalent, dominated, nor related by a multiplicity transfer";
  throw IncompatibleRepError(os.str());
}

}  // namespace kkcalc
