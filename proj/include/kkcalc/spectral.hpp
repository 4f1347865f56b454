#pragma once

// Standard-form homomorphism data between direct sums of dimension drop
// blocks: endpoint multiplicities plus eigenvalue paths, their spectra,
// spectral variation, weak variation bounds and the decomposition step.

#include "kkcalc/algebra.hpp"
#include "kkcalc/pl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kkcalc {

/// One block pair: the fiber of the target at t is s0 copies of the source's
/// endpoint-0 representation, s1 copies of the endpoint-1 representation and
/// one point evaluation per path.
struct BlockHomData {
  std::int64_t s0 = 0;
  std::int64_t s1 = 0;
  std::vector<PLPath> paths;
  friend bool operator==(const BlockHomData&, const BlockHomData&) = default;
};

class HomomorphismData {
 public:
  HomomorphismData() = default;
  // Unchecked; use validate_hom_data for input data.
  HomomorphismData(DirectSumAlgebra source, DirectSumAlgebra target, std::vector<std::vector<BlockHomData>> blocks);

  static HomomorphismData identity(const DirectSumAlgebra& a);

  const DirectSumAlgebra& source() const { return source_; }
  const DirectSumAlgebra& target() const { return target_; }
  // Indexed [target][source].
  const std::vector<std::vector<BlockHomData>>& blocks() const { return blocks_; }
  const BlockHomData& at(std::size_t target, std::size_t source) const { return blocks_.at(target).at(source); }
  BlockHomData& at(std::size_t target, std::size_t source) { return blocks_.at(target).at(source); }

  std::size_t path_count() const;
  friend bool operator==(const HomomorphismData&, const HomomorphismData&) = default;

 private:
  DirectSumAlgebra source_;
  DirectSumAlgebra target_;
  std::vector<std::vector<BlockHomData>> blocks_;
};

/// Matrix size of the image of the unit in each target block (at interior t).
std::vector<Int> unit_image_size(const HomomorphismData& h);
bool is_unital(const HomomorphismData& h);

/// First violated invariant, or nothing: shape, multiplicity range, path
/// values in [0, 1], endpoint structure of the target, and the dimension
/// bound (equality when `unital`).
std::optional<std::string> hom_data_violation(const HomomorphismData& h, bool unital);
/// The same checks without the dimension bound: data of a homomorphism into
/// a matrix amplification of the target.
std::optional<std::string> structure_violation(const HomomorphismData& h);

/// Throws HomDataError.
HomomorphismData validate_hom_data(const DirectSumAlgebra& source, const DirectSumAlgebra& target,
                                   std::vector<std::vector<BlockHomData>> blocks, bool unital = false);

struct SpectrumSnapshot {
  Rational t;
  std::int64_t delta0_mult = 0;
  std::int64_t delta1_mult = 0;
  std::vector<Rational> interior_points;  // sorted
};

SpectrumSnapshot spectrum_at(const HomomorphismData& h, std::size_t target, std::size_t source, const Rational& t);
/// Indexed [target][source]; throws DomainError for t outside [0, 1].
std::vector<std::vector<SpectrumSnapshot>> spectrum_at(const HomomorphismData& h, const Rational& t);

/// Data of g o f (f: A -> B first, then g: B -> C).
HomomorphismData compose_hom_data(const HomomorphismData& f, const HomomorphismData& g);

/// Optimal bottleneck matching distance of two equal-size multisets on the line.
Rational matching_distance(std::vector<Rational> x, std::vector<Rational> y);

/// Weighted paths; the multiset at t holds path(t) with the given multiplicity.
struct WeightedPath {
  PLPath path;
  Int weight;
};

/// sup over s, t of the matching distance between the multisets at s and t.
/// Exact: evaluated at every breakpoint and crossing, plus `grid` uniform samples.
Rational variation(const std::vector<WeightedPath>& paths, int grid = 0);

/// Spectral variation: the maximum over block pairs of the variation of the
/// interior spectrum.
Rational spv(const HomomorphismData& h, int grid = 0);
Rational spv_block(const HomomorphismData& h, std::size_t target, std::size_t source, int grid = 0);

struct OmegaBounds {
  Rational lower;
  Rational upper;
  Rational spv;
};

/// Bounds on the weak variation of scalar profiles f (applied fibrewise to
/// the source) under h. lower is the exact sorted-eigenvalue variation of
/// the image; upper is the modulus of continuity of the profiles at spv(h).
OmegaBounds omega_bounds(const std::vector<PLPath>& profiles, const HomomorphismData& h, int grid = 0);

struct Decomposition {
  HomomorphismData corner;       // the paths that were kept
  HomomorphismData finite_part;  // endpoint multiplicities and snapped constant paths
  Rational max_displacement;     // sup distance moved by snapping
  std::vector<Int> finite_rank;  // per target block, interior matrix rank
  std::vector<Int> corner_rank;
  bool condition_holds = false;  // finite_rank >= L * corner_rank in every block
};

/// Snaps every path with total variation <= 2 tol and displacement <= tol to
/// its value at 1/2. Always returns the split; see decompose for the verdict.
Decomposition split_paths(const HomomorphismData& h, const Rational& tol, const Int& large);
std::optional<Decomposition> decompose(const HomomorphismData& h, const Rational& tol, const Int& large);

/// A homomorphism A -> B with finite dimensional image: k1 copies of the
/// endpoint-0 and k2 copies of the endpoint-1 representation of A,
/// amplified constantly into B.
struct FiniteDimRep {
  Int k1;
  Int k2;
  bool unital = false;
  friend bool operator==(const FiniteDimRep&, const FiniteDimRep&) = default;
};

/// Throws DomainError for negative multiplicities or a false unital flag.
void validate_rep(const FiniteDimRep& rep, const DimDropBlock& source, const DimDropBlock& target);

struct MatchReport {
  enum class Kind { Equivalent, Dominated, Transfer };
  Kind kind = Kind::Equivalent;
  std::optional<FiniteDimRep> eta;  // Dominated: lam = lam2 + eta
  std::optional<Int> l;             // Transfer
  bool range_reduced = false;
  FiniteDimRep lam;   // as matched (after range reduction)
  FiniteDimRep lam2;
};

std::string to_string(MatchReport::Kind k);

/// Throws IncompatibleRepError when no relation holds.
MatchReport finite_rep_match(const FiniteDimRep& lam, const FiniteDimRep& lam2, const DimDropBlock& source,
                             const DimDropBlock& target);

}  // namespace kkcalc
