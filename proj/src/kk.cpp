#include "kkcalc/kk.hpp"

#include "kkcalc/errors.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace kkcalc {

KKDiagram::KKDiagram(DirectSumAlgebra source, DirectSumAlgebra target, std::vector<std::vector<BlockEntry>> blocks)
    : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {}

KKDiagram KKDiagram::zero(const DirectSumAlgebra& source, const DirectSumAlgebra& target) {
  std::vector<std::vector<BlockEntry>> b(target.size(), std::vector<BlockEntry>(source.size(), {0, 0, 0, 0, 0}));
  return KKDiagram(source, target, std::move(b));
}

KKDiagram KKDiagram::identity(const DirectSumAlgebra& a) {
  KKDiagram x = zero(a, a);
  for (std::size_t i = 0; i < a.size(); ++i) x.at(i, i) = {1, 0, 0, 1, 1};
  return x;
}

IntVector KKDiagram::flatten() const {
  IntVector v;
  for (const auto& row : blocks_)
    for (const auto& e : row)
      for (const auto& x : e.as_vector()) v.push_back(x);
  return v;
}

KKDiagram KKDiagram::unflatten(const DirectSumAlgebra& source, const DirectSumAlgebra& target, const IntVector& v) {
  if (v.size() != 5 * source.size() * target.size()) throw std::invalid_argument("KKDiagram::unflatten: length");
  KKDiagram x = zero(source, target);
  std::size_t k = 0;
  for (std::size_t j = 0; j < target.size(); ++j)
    for (std::size_t i = 0; i < source.size(); ++i, k += 5)
      x.at(j, i) = BlockEntry::from_vector(IntVector(v.begin() + static_cast<long>(k), v.begin() + static_cast<long>(k + 5)));
  return x;
}

bool KKDiagram::nonnegative() const {
  for (const auto& row : blocks_)
    for (const auto& e : row)
      if (e.a < 0 || e.b < 0 || e.c < 0 || e.d < 0) return false;
  return true;
}

std::string KKDiagram::describe() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    for (std::size_t i = 0; i < blocks_[j].size(); ++i) {
      const auto& e = blocks_[j][i];
      os << (j + i ? " " : "") << "[" << j << "][" << i << "]=(" << e.a << "," << e.b << "," << e.c << "," << e.d
         << "," << e.s << ")";
    }
  return os.str();
}

namespace {

KKDiagram combine(const KKDiagram& x, const KKDiagram& y, const Int& ky) {
  if (x.source() != y.source() || x.target() != y.target())
    throw AlgebraMismatchError("diagrams between different algebras cannot be added");
  return KKDiagram::unflatten(x.source(), x.target(), add(x.flatten(), scale(ky, y.flatten())));
}

}  // namespace

KKDiagram operator+(const KKDiagram& x, const KKDiagram& y) { return combine(x, y, 1); }
KKDiagram operator-(const KKDiagram& x, const KKDiagram& y) { return combine(x, y, -1); }
KKDiagram operator*(const Int& k, const KKDiagram& x) {
  return KKDiagram::unflatten(x.source(), x.target(), scale(k, x.flatten()));
}

std::optional<std::string> commutativity_violation(const DimDropBlock& src, const DimDropBlock& tgt,
                                                   const BlockEntry& e) {
  const Int a0 = src.ratio0(), a1 = src.ratio1(), b0 = tgt.ratio0(), b1 = tgt.ratio1();
  std::ostringstream os;
  if (b0 * e.a - b1 * e.c != e.s * a0) {
    os << "(n/n0)a - (n/n1)c = s(m/m0) fails: " << b0 << "*" << e.a << " - " << b1 << "*" << e.c << " = "
       << Int(b0 * e.a - b1 * e.c) << " but s(m/m0) = " << Int(e.s * a0);
    return os.str();
  }
  if (b0 * e.b - b1 * e.d != -e.s * a1) {
    os << "(n/n0)b - (n/n1)d = -s(m/m1) fails: " << b0 << "*" << e.b << " - " << b1 << "*" << e.d << " = "
       << Int(b0 * e.b - b1 * e.d) << " but -s(m/m1) = " << Int(-e.s * a1);
    return os.str();
  }
  return std::nullopt;
}

KKDiagram validate_diagram(const DirectSumAlgebra& source, const DirectSumAlgebra& target,
                           std::vector<std::vector<BlockEntry>> blocks) {
  if (blocks.size() != target.size())
    throw AlgebraMismatchError("diagram has " + std::to_string(blocks.size()) + " target rows, expected " +
                               std::to_string(target.size()));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].size() != source.size())
      throw AlgebraMismatchError("diagram row " + std::to_string(j) + " has " + std::to_string(blocks[j].size()) +
                                 " entries, expected " + std::to_string(source.size()));
    for (std::size_t i = 0; i < source.size(); ++i) {
      const BlockEntry& e = blocks[j][i];
      if (auto v = commutativity_violation(source[i], target[j], e))
        throw CommutativityError("block [" + std::to_string(j) + "][" + std::to_string(i) + "]: " + *v);
      // lambda1 must descend to Z_p -> Z_q.
      const Int p = source[i].k1_order(), q = target[j].k1_order();
      if ((e.s * p) % q != 0)
        throw CommutativityError("block [" + std::to_string(j) + "][" + std::to_string(i) +
                                 "]: lambda1 does not descend to K1");
    }
  }
  return KKDiagram(source, target, std::move(blocks));
}

IntMatrix k0_map(const KKDiagram& x) {
  const KTheoryData ka = k_theory(x.source()), kb = k_theory(x.target());
  IntMatrix m(x.target().size(), x.source().size());
  for (std::size_t j = 0; j < x.target().size(); ++j)
    for (std::size_t i = 0; i < x.source().size(); ++i) {
      const BlockEntry& e = x.at(j, i);
      const auto& g = ka.blocks[i];
      const auto& h = kb.blocks[j];
      const Int y0 = e.a * g.g0 + e.b * g.g1;
      const Int y1 = e.c * g.g0 + e.d * g.g1;
      m(j, i) = y0 / h.g0;
      if (m(j, i) * h.g0 != y0 || m(j, i) * h.g1 != y1)
        throw std::logic_error("k0_map: image of the generator is not a multiple of the target generator");
    }
  return m;
}

GroupHom lambda0_star(const KKDiagram& x) {
  return GroupHom{FgGroup::free(x.source().size()), FgGroup::free(x.target().size()), k0_map(x)};
}

FgGroup k1_group(const DirectSumAlgebra& a) {
  IntMatrix rel(a.size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) rel(i, i) = a[i].k1_order();
  return FgGroup(a.size(), rel);
}

GroupHom lambda1_star(const KKDiagram& x) {
  IntMatrix m(x.target().size(), x.source().size());
  for (std::size_t j = 0; j < x.target().size(); ++j)
    for (std::size_t i = 0; i < x.source().size(); ++i) m(j, i) = x.at(j, i).s;
  return GroupHom{k1_group(x.source()), k1_group(x.target()), std::move(m)};
}

BlockEntry m_generator(const DimDropBlock& src, const DimDropBlock& tgt, const Int& u1, const Int& u2) {
  const Int a0 = src.ratio0(), a1 = src.ratio1(), b0 = tgt.ratio0(), b1 = tgt.ratio1();
  return {u1 * a0, -u1 * a1, u2 * a0, -u2 * a1, b0 * u1 - b1 * u2};
}

namespace {

using RatioKey = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;

}  // namespace

KKGroup::KKGroup(DirectSumAlgebra source, DirectSumAlgebra target)
    : source_(std::move(source)), target_(std::move(target)) {
  static std::mutex mu;
  static std::map<RatioKey, std::shared_ptr<const Pair>> memo;
  std::vector<IntMatrix> rels;
  for (std::size_t j = 0; j < target_.size(); ++j)
    for (std::size_t i = 0; i < source_.size(); ++i) {
      const auto& s = source_[i];
      const auto& t = target_[j];
      const RatioKey key{s.ratio0(), s.ratio1(), t.ratio0(), t.ratio1()};
      std::shared_ptr<const Pair> p;
      {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) p = it->second;
      }
      if (!p) {
        // Row equations on (a, b, c, d, s).
        const IntMatrix eq{{t.ratio0(), 0, -t.ratio1(), 0, -s.ratio0()}, {0, t.ratio0(), 0, -t.ratio1(), s.ratio1()}};
        auto np = std::make_shared<Pair>();
        np->lattice = integer_kernel(eq);
        np->relations = IntMatrix(2, np->lattice.cols());
        for (int u = 0; u < 2; ++u) {
          const BlockEntry g = m_generator(s, t, u == 0 ? 1 : 0, u == 0 ? 0 : 1);
          auto c = solve_integer(np->lattice, g.as_vector());
          if (!c) throw std::logic_error("diagonal element outside the diagram lattice");
          for (std::size_t k = 0; k < c->particular.size(); ++k) np->relations(u, k) = c->particular[k];
        }
        std::lock_guard<std::mutex> lock(mu);
        p = memo.emplace(key, std::move(np)).first->second;
      }
      pairs_.push_back(p);
      rels.push_back(p->relations);
    }
  const IntMatrix all = IntMatrix::block_diagonal(rels);
  group_ = FgGroup(3 * pairs_.size(), all);
}

const IntMatrix& KKGroup::pair_lattice(std::size_t target, std::size_t source) const {
  return pairs_.at(target * source_.size() + source)->lattice;
}

IntVector KKGroup::lattice_coordinates(const KKDiagram& x) const {
  if (x.source() != source_ || x.target() != target_)
    throw AlgebraMismatchError("diagram does not belong to this KK group");
  IntVector out;
  for (std::size_t j = 0; j < target_.size(); ++j)
    for (std::size_t i = 0; i < source_.size(); ++i) {
      auto c = solve_integer(pair_lattice(j, i), x.at(j, i).as_vector());
      if (!c) throw CommutativityError("block [" + std::to_string(j) + "][" + std::to_string(i) + "] is not a diagram");
      for (auto& v : c->particular) out.push_back(std::move(v));
    }
  return out;
}

KKDiagram KKGroup::from_lattice(const IntVector& coords) const {
  KKDiagram x = KKDiagram::zero(source_, target_);
  std::size_t k = 0;
  for (std::size_t j = 0; j < target_.size(); ++j)
    for (std::size_t i = 0; i < source_.size(); ++i, k += 3) {
      const IntVector c(coords.begin() + static_cast<long>(k), coords.begin() + static_cast<long>(k + 3));
      x.at(j, i) = BlockEntry::from_vector(pair_lattice(j, i) * c);
    }
  return x;
}

IntVector KKGroup::canonical(const KKDiagram& x) const { return group_.coordinates(lattice_coordinates(x)); }

KKDiagram KKGroup::section(const IntVector& canonical) const {
  return from_lattice(group_.ambient_from_coordinates(canonical));
}

bool KKGroup::in_m(const KKDiagram& x) const { return group_.is_zero(lattice_coordinates(x)); }

std::shared_ptr<const KKGroup> kk_group(const DirectSumAlgebra& source, const DirectSumAlgebra& target) {
  using Key = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const KKGroup>> memo;
  auto flat = [](const DirectSumAlgebra& a) {
    std::vector<std::int64_t> v;
    for (const auto& b : a.summands()) v.insert(v.end(), {b.r, b.m0, b.m, b.m1});
    return v;
  };
  const Key key{flat(source), flat(target)};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  auto g = std::make_shared<const KKGroup>(source, target);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(key, std::move(g)).first->second;
}

KKClass canonicalize(const KKDiagram& x) {
  auto g = kk_group(x.source(), x.target());
  IntVector c = g->canonical(x);
  KKDiagram rep = g->section(c);
  return KKClass{std::move(g), std::move(rep), std::move(c)};
}

KKClass identity_class(const DirectSumAlgebra& a) { return canonicalize(KKDiagram::identity(a)); }

KKClass zero_class(const DirectSumAlgebra& source, const DirectSumAlgebra& target) {
  return canonicalize(KKDiagram::zero(source, target));
}

KKClass add(const KKClass& x, const KKClass& y) { return canonicalize(x.representative + y.representative); }
KKClass negate(const KKClass& x) { return canonicalize(Int(-1) * x.representative); }
KKClass multiply(const Int& k, const KKClass& x) { return canonicalize(k * x.representative); }

KKDiagram compose_diagrams(const KKDiagram& x, const KKDiagram& y) {
  if (x.target() != y.source())
    throw AlgebraMismatchError("cannot compose: middle algebras differ (" + x.target().describe() + " vs " +
                               y.source().describe() + ")");
  KKDiagram z = KKDiagram::zero(x.source(), y.target());
  for (std::size_t k = 0; k < y.target().size(); ++k)
    for (std::size_t i = 0; i < x.source().size(); ++i) {
      BlockEntry& out = z.at(k, i);
      for (std::size_t j = 0; j < x.target().size(); ++j) {
        const BlockEntry& l = x.at(j, i);
        const BlockEntry& r = y.at(k, j);
        out.a += r.a * l.a + r.b * l.c;
        out.b += r.a * l.b + r.b * l.d;
        out.c += r.c * l.a + r.d * l.c;
        out.d += r.c * l.b + r.d * l.d;
        out.s += r.s * l.s;
      }
    }
  return z;
}

KKClass compose(const KKClass& x, const KKClass& y) {
  return canonicalize(compose_diagrams(x.representative, y.representative));
}

namespace {

// Chain maps of a diagram on C^0 (endpoint ranks) and C^1 (middle).
std::pair<IntMatrix, IntMatrix> chain_maps(const KKDiagram& x) {
  const std::size_t ns = x.source().size(), nt = x.target().size();
  IntMatrix l0(2 * nt, 2 * ns), l1(nt, ns);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t i = 0; i < ns; ++i) {
      const BlockEntry& e = x.at(j, i);
      l0(2 * j, 2 * i) = e.a;
      l0(2 * j, 2 * i + 1) = e.b;
      l0(2 * j + 1, 2 * i) = e.c;
      l0(2 * j + 1, 2 * i + 1) = e.d;
      l1(j, i) = e.s;
    }
  return {l0, l1};
}

}  // namespace

InducedTotal induced_total(const KKDiagram& x, const TotalKModule& a, const TotalKModule& b) {
  const auto [l0, l1] = chain_maps(x);
  InducedTotal out;
  out.k0 = induced_on_homology(a.k0, b.k0, l0);
  out.k1 = induced_on_homology(a.k1, b.k1, l1);
  if (a.parts.size() != b.parts.size()) throw AlgebraMismatchError("coefficient sets differ");
  // On the cone C^1 + C^0 the map is lambda1 + lambda0.
  IntMatrix cone(l1.rows() + l0.rows(), l1.cols() + l0.cols());
  cone.set_block(0, 0, l1);
  cone.set_block(l1.rows(), l1.cols(), l0);
  for (std::size_t k = 0; k < a.parts.size(); ++k) {
    out.k0_coeff.push_back(induced_on_homology(a.parts[k].k0, b.parts[k].k0, cone));
    out.k1_coeff.push_back(induced_on_homology(a.parts[k].k1, b.parts[k].k1, l1));
  }
  return out;
}

}  // namespace kkcalc
