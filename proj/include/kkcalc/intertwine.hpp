#pragma once

// Inductive systems of direct sums of dimension drop blocks: composite
// connecting maps, stage-wise real rank zero diagnostics, comparison of
// elements in the limit, and the search for an intertwining ladder of KK
// classes between two systems.

#include "kkcalc/kk.hpp"
#include "kkcalc/lift.hpp"
#include "kkcalc/spectral.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kkcalc {

class InductiveSystem {
 public:
  InductiveSystem() = default;
  // connecting[n] : stages[n] -> stages[n+1]. Throws AlgebraMismatchError or
  // HomDataError.
  InductiveSystem(std::vector<DirectSumAlgebra> stages, std::vector<HomomorphismData> connecting);

  const std::vector<DirectSumAlgebra>& stages() const { return stages_; }
  const std::vector<HomomorphismData>& connecting() const { return connecting_; }
  std::size_t size() const { return stages_.size(); }
  const DirectSumAlgebra& stage(std::size_t n) const;

  /// Data of stage n -> stage r (identity when r == n). Throws StageRangeError.
  HomomorphismData composite(std::size_t n, std::size_t r) const;
  /// KK class of stage n -> stage r, composed from the stepwise classes.
  KKClass connecting_class(std::size_t n, std::size_t r) const;

 private:
  std::vector<DirectSumAlgebra> stages_;
  std::vector<HomomorphismData> connecting_;
  std::vector<KKClass> step_classes_;
};

struct SystemReport {
  std::size_t from_stage = 0;
  std::size_t horizon = 0;
  // Entry k describes the composite from_stage -> from_stage + 1 + k.
  std::vector<Rational> spv;
  std::vector<Rational> omega_upper;
  // Largest sup distance of a composite path to its nearest constant.
  std::vector<Rational> proximity;
  // induced class of each composite equals the product of the stepwise classes
  bool composites_consistent = true;
  // spv non-increasing and either strictly smaller at the end or zero.
  bool decay = false;
};

/// Diagnostics for the composites n -> r, r = n+1..horizon (stage indices).
/// `profiles` default to the identity profile. Throws StageRangeError unless
/// n < horizon < number of stages.
SystemReport system_report(const InductiveSystem& s, std::size_t from_stage, std::size_t horizon,
                           const std::vector<PLPath>& profiles = {});

/// An element of total K-theory of one stage: degree 0 or 1, coefficient n
/// (0 for integral K-theory), coordinates relative to the homology basis of
/// total_k.
struct KElement {
  std::size_t stage = 0;
  int degree = 0;
  std::int64_t coefficient = 0;
  IntVector coords;
};

struct LimitVerdict {
  bool equal = false;
  // First stage where the images agree, or the horizon when they never do.
  std::size_t stage = 0;
};

/// Pushes both elements forward along the connecting maps up to `horizon`.
/// Throws StageRangeError, InputError for malformed coordinates.
LimitVerdict limit_compare(const InductiveSystem& s, const KElement& x, const KElement& y, std::size_t horizon);

/// Image of an element at a later stage.
KElement push_forward(const InductiveSystem& s, const KElement& x, std::size_t to_stage);

/// One seed class alpha_i : A_i -> B_{t(i)}.
struct SeedEntry {
  std::size_t source_stage = 0;
  std::size_t target_stage = 0;
  KKClass cls;
};

struct LadderBounds {
  std::size_t max_stage = 0;
  long coefficient_bound = 10;
  // rho_n lands at least this many stages past the seed target.
  std::size_t min_shift = 0;
};

struct Ladder {
  std::vector<std::size_t> source_stages;  // r_1 < r_2 < ...
  std::vector<std::size_t> target_stages;  // s_1 < s_2 < ...
  std::vector<KKClass> down;               // rho_n : A_{r_n} -> B_{s_n}
  std::vector<KKClass> up;                 // sigma_n : B_{s_n} -> A_{r_{n+1}}
  std::vector<LiftCertificate> down_certificates;
  std::vector<LiftCertificate> up_certificates;
};

struct LadderResult {
  std::optional<Ladder> ladder;
  std::size_t failing_rung = 0;
  std::string reason;
};

/// Checks seed compatibility with both systems. Throws SeedIncompatibleError.
void check_seed(const InductiveSystem& a, const InductiveSystem& b, const std::vector<SeedEntry>& seed);

/// First violated ladder condition, or nothing.
std::optional<std::string> ladder_violation(const InductiveSystem& a, const InductiveSystem& b, const Ladder& l);

LadderResult ladder_search(const InductiveSystem& a, const InductiveSystem& b, const std::vector<SeedEntry>& seed,
                           const LadderBounds& bounds);

}  // namespace kkcalc
