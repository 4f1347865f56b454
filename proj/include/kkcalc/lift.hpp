#pragma once

// Liftability of KK classes to *-homomorphisms: nonnegative representatives,
// the unit-class condition, largeness, and explicit realization as
// standard-form homomorphism data.

#include "kkcalc/kk.hpp"
#include "kkcalc/spectral.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kkcalc {

struct LiftCertificate {
  KKDiagram original;
  // original + the diagonal element given by `shifts`; every a, b, c, d >= 0.
  KKDiagram shifted;
  // Per block pair [target][source]: (u1, u2).
  std::vector<std::vector<std::pair<Int, Int>>> shifts;
  // Unit image in generator multiples per target block (when computed).
  std::vector<Int> unit_image;
  bool unital = false;
};

struct LiftDecision {
  std::optional<LiftCertificate> certificate;
  std::string reason;  // empty on success
};

/// Per block pair, the smallest u1 in [ceil(-a m0/m), floor(b m1/m)] and u2
/// in [ceil(-c m0/m), floor(d m1/m)].
LiftDecision decide_stable_lift(const KKClass& x);
std::optional<LiftCertificate> stably_liftable(const KKClass& x);
/// Same test on an explicit representative.
LiftDecision decide_stable_lift(const KKDiagram& x);

/// Image of [1_A] in K0(B), in generator multiples per target block.
std::vector<Int> unit_image(const KKDiagram& x);

/// Stable lift plus unit image <= [1_B]; unital flag when equal.
LiftDecision decide_unital_lift(const KKClass& x);
std::optional<LiftCertificate> unital_lift_exists(const KKClass& x);

bool is_l_large(const KKClass& x, const Int& l);
bool is_strictly_l_large(const KKClass& x, const Int& l);

/// The class of the embedding of I[1, rm, 1] into summand i of A.
KKClass test_class(const DirectSumAlgebra& a, std::size_t summand);

/// Standard-form data realizing a diagram with nonnegative lambda0: endpoint
/// multiplicities reduced into the standard range, remaining multiplicity as
/// paths through 1/2.
HomomorphismData realize(const KKDiagram& nonnegative);

/// The diagram of a homomorphism given by data that is valid up to the
/// dimension bound (interior endpoint values count toward the endpoint-0
/// side). Throws HomDataError.
KKDiagram induced_diagram(const HomomorphismData& h);
KKClass induced_kk(const HomomorphismData& h);

struct ExistenceResult {
  std::optional<HomomorphismData> data;
  std::optional<LiftCertificate> certificate;
  std::string reason;  // names the violated condition on failure
};

/// Test classes through every summand liftable, then the scale inequality,
/// then realization; the result induces x.
ExistenceResult local_existence_report(const KKClass& x);
std::optional<HomomorphismData> local_existence(const KKClass& x);

}  // namespace kkcalc
