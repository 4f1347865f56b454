#pragma once

// Generalized dimension drop interval algebras M_r(I[m0, m, m1]), finite
// direct sums of them, and their K-theory with coefficients.

#include "kkcalc/zmodule.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kkcalc {

/// M_r(I[m0, m, m1]) with m0 | m and m1 | m.
struct DimDropBlock {
  std::int64_t r = 1;
  std::int64_t m0 = 1;
  std::int64_t m = 1;
  std::int64_t m1 = 1;

  // Index-map ratios of the boundary sequence; independent of r.
  std::int64_t ratio0() const { return m / m0; }
  std::int64_t ratio1() const { return m / m1; }
  // M_r(I[m0,m,m1]) = I[r m0, r m, r m1].
  std::int64_t eff_m0() const { return r * m0; }
  std::int64_t eff_m() const { return r * m; }
  std::int64_t eff_m1() const { return r * m1; }
  std::int64_t k1_order() const;

  std::string describe() const;
  friend bool operator==(const DimDropBlock&, const DimDropBlock&) = default;
};

class DirectSumAlgebra {
 public:
  DirectSumAlgebra() = default;
  // Throws DivisibilityError / NonPositiveError.
  explicit DirectSumAlgebra(std::vector<DimDropBlock> summands);

  const std::vector<DimDropBlock>& summands() const { return summands_; }
  std::size_t size() const { return summands_.size(); }
  const DimDropBlock& operator[](std::size_t i) const { return summands_[i]; }

  std::string describe() const;
  friend bool operator==(const DirectSumAlgebra&, const DirectSumAlgebra&) = default;

 private:
  std::vector<DimDropBlock> summands_;
};

DirectSumAlgebra validate_algebra(std::vector<DimDropBlock> summands);
DirectSumAlgebra single_block(std::int64_t r, std::int64_t m0, std::int64_t m, std::int64_t m1);

struct BlockKTheory {
  FgGroup k0;  // Z
  FgGroup k1;  // Z_p
  // Endpoint ranks of the positive generator of K0.
  Int g0;
  Int g1;
  // [1] = unit_coefficient * generator.
  Int unit_coefficient;
  Int k1_order;

  // Positive cone: nonnegative multiples of the generator.
  static bool is_positive(const Int& k0_class) { return k0_class >= 0; }
  // Scale: the order interval [0, unit_coefficient].
  bool in_scale(const Int& k0_class) const { return k0_class >= 0 && k0_class <= unit_coefficient; }
};

struct KTheoryData {
  std::vector<BlockKTheory> blocks;

  // K0 classes in generator multiples, one entry per summand.
  IntVector unit_class() const;
  bool in_scale(const IntVector& k0_class) const;
};

KTheoryData k_theory(const DirectSumAlgebra& a);

/// ker(d_out) / im(d_in) with a fixed kernel basis. Elements are integer
/// coordinates relative to the columns of `basis`.
struct Homology {
  IntMatrix basis;  // ambient x rank
  FgGroup group;

  std::size_t ambient_dim() const { return basis.rows(); }
  IntVector ambient(const IntVector& coords) const { return basis * coords; }
  // Coordinates of an ambient cycle; throws if it is not a cycle.
  IntVector coordinates_of(const IntVector& ambient_cycle) const;
};

// Both maps are given as (target dim x source dim) matrices.
Homology homology(const IntMatrix& d_in, const IntMatrix& d_out);
Homology homology_with_basis(IntMatrix basis, const IntMatrix& d_in);

/// Map on homology induced by a chain-level matrix.
GroupHom induced_on_homology(const Homology& src, const Homology& tgt, const IntMatrix& chain);

/// Two-term complex C^0 = Z^{2N} -> C^1 = Z^N whose cohomology is K_*(A):
/// block rows (m/m0, -m/m1). Coefficient groups are the cohomology of the
/// mapping cone of multiplication by n on this complex.
struct KComplex {
  IntMatrix boundary;  // N x 2N
  std::size_t c0() const { return boundary.cols(); }
  std::size_t c1() const { return boundary.rows(); }

  IntMatrix cone_d_minus(std::int64_t n) const;  // (c1 + c0) x c0
  IntMatrix cone_d_zero(std::int64_t n) const;   // c1 x (c1 + c0)
};

KComplex k_complex(const DirectSumAlgebra& a);

struct CoefficientPart {
  std::int64_t n = 0;
  Homology k0;  // K_0(A; Z_n)
  Homology k1;  // K_1(A; Z_n)
  GroupHom rho0;   // K_0 -> K_0(;Z_n)
  GroupHom rho1;   // K_1 -> K_1(;Z_n)
  GroupHom beta0;  // K_0(;Z_n) -> K_1
  GroupHom beta1;  // K_1(;Z_n) -> K_0
};

/// Coefficient change between n | n2: `up` is Z_n -> Z_n2 (multiplication by
/// n2/n), otherwise the reduction Z_n2 -> Z_n.
struct CoefficientTransform {
  std::int64_t from = 0;
  std::int64_t to = 0;
  bool up = true;
  GroupHom deg0;
  GroupHom deg1;
};

struct TotalKModule {
  DirectSumAlgebra algebra;
  Homology k0;
  Homology k1;
  GroupHom times_n_k0(std::int64_t n) const;
  GroupHom times_n_k1(std::int64_t n) const;
  std::vector<CoefficientPart> parts;
  std::vector<CoefficientTransform> transforms;

  const CoefficientPart& part(std::int64_t n) const;
  // Exactness of every Bockstein sequence and vanishing of consecutive composites.
  bool bockstein_exact() const;
};

// Chain-level matrices of the Bockstein operations (shared with the kk module
// so induced maps use the same coordinates).
namespace chain {
IntMatrix rho0(const KComplex& c);
IntMatrix beta0(const KComplex& c);
IntMatrix coefficient_up_deg0(const KComplex& c, std::int64_t factor);
IntMatrix coefficient_down_deg0(const KComplex& c, std::int64_t factor);
}  // namespace chain

TotalKModule total_k(const DirectSumAlgebra& a, const std::vector<std::int64_t>& coefficients);

/// Divisors n >= 2 of the bound.
std::vector<std::int64_t> coefficient_set(std::int64_t bound);
constexpr std::int64_t kDefaultCoefficientBound = 24;
/// KKCALC_COEFF_BOUND if set to a positive integer, else the default.
std::int64_t coefficient_bound_from_env();

}  // namespace kkcalc
