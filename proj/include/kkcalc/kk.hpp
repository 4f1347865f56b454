#pragma once

// KK(A, B) for direct sums of dimension drop blocks, computed as commutative
// ladder diagrams between the boundary sequences of A and B modulo the
// diagrams that admit a diagonal.

#include "kkcalc/algebra.hpp"
#include "kkcalc/zmodule.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kkcalc {

/// One block pair: lambda0 = [[a, b], [c, d]] on the endpoint ranks, lambda1 = s.
struct BlockEntry {
  Int a, b, c, d, s;

  IntVector as_vector() const { return {a, b, c, d, s}; }
  static BlockEntry from_vector(const IntVector& v) { return {v.at(0), v.at(1), v.at(2), v.at(3), v.at(4)}; }
  friend bool operator==(const BlockEntry&, const BlockEntry&) = default;
};

class KKDiagram {
 public:
  KKDiagram() = default;
  // Unchecked; use validate_diagram for input data.
  KKDiagram(DirectSumAlgebra source, DirectSumAlgebra target, std::vector<std::vector<BlockEntry>> blocks);

  static KKDiagram zero(const DirectSumAlgebra& source, const DirectSumAlgebra& target);
  static KKDiagram identity(const DirectSumAlgebra& a);

  const DirectSumAlgebra& source() const { return source_; }
  const DirectSumAlgebra& target() const { return target_; }
  // Indexed [target][source].
  const std::vector<std::vector<BlockEntry>>& blocks() const { return blocks_; }
  const BlockEntry& at(std::size_t target, std::size_t source) const { return blocks_.at(target).at(source); }
  BlockEntry& at(std::size_t target, std::size_t source) { return blocks_.at(target).at(source); }

  IntVector flatten() const;
  static KKDiagram unflatten(const DirectSumAlgebra& source, const DirectSumAlgebra& target, const IntVector& v);

  bool nonnegative() const;
  std::string describe() const;
  friend bool operator==(const KKDiagram&, const KKDiagram&) = default;

 private:
  DirectSumAlgebra source_;
  DirectSumAlgebra target_;
  std::vector<std::vector<BlockEntry>> blocks_;
};

KKDiagram operator+(const KKDiagram& x, const KKDiagram& y);
KKDiagram operator-(const KKDiagram& x, const KKDiagram& y);
KKDiagram operator*(const Int& k, const KKDiagram& x);

/// Empty if the block satisfies both row equations, else a description of the
/// first violated one.
std::optional<std::string> commutativity_violation(const DimDropBlock& src, const DimDropBlock& tgt,
                                                   const BlockEntry& e);

/// Throws CommutativityError (or AlgebraMismatchError on a shape mismatch).
KKDiagram validate_diagram(const DirectSumAlgebra& source, const DirectSumAlgebra& target,
                           std::vector<std::vector<BlockEntry>> blocks);

/// Induced map on K0 in generator multiples (target rank x source rank).
IntMatrix k0_map(const KKDiagram& x);
GroupHom lambda0_star(const KKDiagram& x);
/// Induced map on K1 = sum of Z_p; the matrix is lambda1 itself.
GroupHom lambda1_star(const KKDiagram& x);
FgGroup k1_group(const DirectSumAlgebra& a);

/// The diagonal element u1 * (a-shift) + u2 * (c-shift) on one block pair.
BlockEntry m_generator(const DimDropBlock& src, const DimDropBlock& tgt, const Int& u1, const Int& u2);

/// C(A,B)/M(A,B). Ambient coordinates are three lattice coordinates per block
/// pair (pairs ordered target-major); relations are the diagonal elements.
class KKGroup {
 public:
  KKGroup(DirectSumAlgebra source, DirectSumAlgebra target);

  const DirectSumAlgebra& source() const { return source_; }
  const DirectSumAlgebra& target() const { return target_; }
  const FgGroup& group() const { return group_; }

  std::size_t pair_count() const { return target_.size() * source_.size(); }
  // Lattice basis (5 x 3) of the solutions of the row equations for a pair.
  const IntMatrix& pair_lattice(std::size_t target, std::size_t source) const;

  IntVector lattice_coordinates(const KKDiagram& x) const;
  KKDiagram from_lattice(const IntVector& coords) const;

  // Invariant-factor coordinates, least nonnegative residues on torsion.
  IntVector canonical(const KKDiagram& x) const;
  KKDiagram section(const IntVector& canonical) const;

  bool in_m(const KKDiagram& x) const;
  std::string describe() const { return group_.describe(); }

 private:
  struct Pair {
    IntMatrix lattice;
    IntMatrix relations;
  };
  DirectSumAlgebra source_;
  DirectSumAlgebra target_;
  std::vector<std::shared_ptr<const Pair>> pairs_;
  FgGroup group_;
};

/// Memoized on the algebra pair.
std::shared_ptr<const KKGroup> kk_group(const DirectSumAlgebra& source, const DirectSumAlgebra& target);

struct KKClass {
  std::shared_ptr<const KKGroup> group;
  // The section representative of the class.
  KKDiagram representative;
  IntVector canonical;

  const DirectSumAlgebra& source() const { return group->source(); }
  const DirectSumAlgebra& target() const { return group->target(); }
  bool is_zero() const { return kkcalc::is_zero(canonical); }

  friend bool operator==(const KKClass& x, const KKClass& y) {
    return x.source() == y.source() && x.target() == y.target() && x.canonical == y.canonical;
  }
};

KKClass canonicalize(const KKDiagram& x);
KKClass identity_class(const DirectSumAlgebra& a);
KKClass zero_class(const DirectSumAlgebra& source, const DirectSumAlgebra& target);

KKClass add(const KKClass& x, const KKClass& y);
KKClass negate(const KKClass& x);
KKClass multiply(const Int& k, const KKClass& x);

/// Diagram of y o x (first x: A -> B, then y: B -> C).
KKDiagram compose_diagrams(const KKDiagram& x, const KKDiagram& y);
/// Kasparov product y o x; throws AlgebraMismatchError if x.target != y.source.
KKClass compose(const KKClass& x, const KKClass& y);

/// Maps induced by a diagram on every component of total K-theory.
struct InducedTotal {
  GroupHom k0;
  GroupHom k1;
  std::vector<GroupHom> k0_coeff;  // one per coefficient part
  std::vector<GroupHom> k1_coeff;
};

InducedTotal induced_total(const KKDiagram& x, const TotalKModule& a, const TotalKModule& b);

struct UctReport {
  std::size_t free_rank = 0;       // of kk_group
  Int torsion_order;               // of kk_group
  std::size_t predicted_free_rank = 0;
  Int predicted_torsion_order;
  FgGroup hom_lambda;              // Hom over the Bockstein operations
  std::vector<std::int64_t> coefficients;
  bool gamma_isomorphism = false;  // KK -> Hom_Lambda bijective
  bool gamma_consistent = false;   // all of the above agree
};

/// Divisors >= 2 of the lcm of every K1 order of source and target.
std::vector<std::int64_t> uct_coefficients(const DirectSumAlgebra& source, const DirectSumAlgebra& target);

UctReport uct_crosscheck(const DirectSumAlgebra& source, const DirectSumAlgebra& target);
UctReport uct_crosscheck(const DirectSumAlgebra& source, const DirectSumAlgebra& target,
                         const std::vector<std::int64_t>& coefficients);

}  // namespace kkcalc
