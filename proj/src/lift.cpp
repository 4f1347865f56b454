#include "kkcalc/lift.hpp"

#include "kkcalc/errors.hpp"

#include <sstream>

namespace kkcalc {

namespace {

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::string pair_name(std::size_t j, std::size_t i) {
  return "block [" + std::to_string(j) + "][" + std::to_string(i) + "]";
}

}  // namespace

LiftDecision decide_stable_lift(const KKDiagram& x) {
  LiftDecision out;
  LiftCertificate cert;
  cert.original = x;
  cert.shifted = x;
  const auto& A = x.source();
  const auto& B = x.target();
  cert.shifts.assign(B.size(), std::vector<std::pair<Int, Int>>(A.size()));
  for (std::size_t j = 0; j < B.size(); ++j)
    for (std::size_t i = 0; i < A.size(); ++i) {
      const BlockEntry& e = x.at(j, i);
      const Int a0 = A[i].ratio0(), a1 = A[i].ratio1();
      // a + u1 m/m0 >= 0 and b - u1 m/m1 >= 0; likewise c, d with u2.
      const Int lo1 = ceil_div(-e.a, a0), hi1 = floor_div(e.b, a1);
      const Int lo2 = ceil_div(-e.c, a0), hi2 = floor_div(e.d, a1);
      if (lo1 > hi1) {
        out.reason = pair_name(j, i) + ": u1 interval empty";
        return out;
      }
      if (lo2 > hi2) {
        out.reason = pair_name(j, i) + ": u2 interval empty";
        return out;
      }
      const BlockEntry g = m_generator(A[i], B[j], lo1, lo2);
      BlockEntry& s = cert.shifted.at(j, i);
      s.a += g.a;
      s.b += g.b;
      s.c += g.c;
      s.d += g.d;
      s.s += g.s;
      cert.shifts[j][i] = {lo1, lo2};
    }
  cert.unit_image = unit_image(x);
  const KTheoryData kb = k_theory(B);
  cert.unital = true;
  for (std::size_t j = 0; j < B.size(); ++j)
    if (cert.unit_image[j] != kb.blocks[j].unit_coefficient) cert.unital = false;
  out.certificate = std::move(cert);
  return out;
}

LiftDecision decide_stable_lift(const KKClass& x) { return decide_stable_lift(x.representative); }

std::optional<LiftCertificate> stably_liftable(const KKClass& x) { return decide_stable_lift(x).certificate; }

std::vector<Int> unit_image(const KKDiagram& x) {
  const IntMatrix m = k0_map(x);
  const IntVector u = k_theory(x.source()).unit_class();
  return m * u;
}

LiftDecision decide_unital_lift(const KKClass& x) {
  LiftDecision d = decide_stable_lift(x);
  if (!d.certificate) return d;
  const KTheoryData kb = k_theory(x.target());
  const auto& img = d.certificate->unit_image;
  for (std::size_t j = 0; j < img.size(); ++j)
    if (img[j] > kb.blocks[j].unit_coefficient) {
      std::ostringstream os;
      os << "unit image " << img[j] << " exceeds the unit class " << kb.blocks[j].unit_coefficient
         << " of target block " << j;
      return LiftDecision{std::nullopt, os.str()};
    }
  return d;
}

std::optional<LiftCertificate> unital_lift_exists(const KKClass& x) { return decide_unital_lift(x).certificate; }

bool is_l_large(const KKClass& x, const Int& l) {
  for (const Int& k : unit_image(x.representative))
    if (k < l) return false;
  return true;
}

bool is_strictly_l_large(const KKClass& x, const Int& l) { return is_l_large(x, l + 1); }

KKClass test_class(const DirectSumAlgebra& a, std::size_t summand) {
  const DimDropBlock& b = a[summand];
  const DirectSumAlgebra src = single_block(1, 1, b.eff_m(), 1);
  KKDiagram k = KKDiagram::zero(src, a);
  k.at(summand, 0) = {b.eff_m0(), 0, 0, b.eff_m1(), 1};
  return canonicalize(validate_diagram(src, a, k.blocks()));
}

HomomorphismData realize(const KKDiagram& x) {
  if (!x.nonnegative()) throw DomainError("realize needs a diagram with nonnegative lambda0");
  const auto& A = x.source();
  const auto& B = x.target();
  const Rational half(1, 2);
  std::vector<std::vector<BlockHomData>> blocks(B.size(), std::vector<BlockHomData>(A.size()));
  for (std::size_t j = 0; j < B.size(); ++j)
    for (std::size_t i = 0; i < A.size(); ++i) {
      const BlockEntry& e = x.at(j, i);
      const Int a0 = A[i].ratio0(), a1 = A[i].ratio1(), b0 = B[j].ratio0(), b1 = B[j].ratio1();
      Int s0, s1;
      mpz_fdiv_r(s0.get_mpz_t(), Int(b0 * e.a).get_mpz_t(), a0.get_mpz_t());
      mpz_fdiv_r(s1.get_mpz_t(), Int(b0 * e.b).get_mpz_t(), a1.get_mpz_t());
      // Paths leaving from the endpoint-0 / endpoint-1 side at t = 0 and t = 1.
      const Int x0 = (b0 * e.a - s0) / a0, x1 = (b0 * e.b - s1) / a1;
      const Int y0 = (b1 * e.c - s0) / a0, y1 = (b1 * e.d - s1) / a1;
      Int p00, p01, p10, p11;
      if (e.s >= 0) {
        p01 = e.s;
        p10 = 0;
        p00 = y0;
        p11 = x1;
      } else {
        p10 = -e.s;
        p01 = 0;
        p00 = x0;
        p11 = y1;
      }
      if (p00 < 0 || p11 < 0 || p00 + p01 != x0 || p10 + p11 != x1 || p00 + p10 != y0 || p01 + p11 != y1)
        throw std::logic_error("realize: inconsistent path counts");
      BlockHomData& out = blocks[j][i];
      out.s0 = s0.get_si();
      out.s1 = s1.get_si();
      auto add = [&](const Int& n, int from, int to) {
        for (Int k = 0; k < n; ++k) out.paths.push_back(PLPath({{0, from}, {half, half}, {1, to}}));
      };
      add(p00, 0, 0);
      add(p01, 0, 1);
      add(p10, 1, 0);
      add(p11, 1, 1);
    }
  return HomomorphismData(A, B, std::move(blocks));
}

KKDiagram induced_diagram(const HomomorphismData& h) {
  if (auto v = structure_violation(h)) throw HomDataError(*v);
  const auto& A = h.source();
  const auto& B = h.target();
  std::vector<std::vector<BlockEntry>> blocks(B.size(), std::vector<BlockEntry>(A.size()));
  for (std::size_t j = 0; j < B.size(); ++j)
    for (std::size_t i = 0; i < A.size(); ++i) {
      const auto& b = h.at(j, i);
      const Int a0 = A[i].ratio0(), a1 = A[i].ratio1(), b0 = B[j].ratio0(), b1 = B[j].ratio1();
      Int low0 = 0, high0 = 0, low1 = 0, high1 = 0, up = 0, down = 0;
      for (const auto& p : b.paths) {
        const bool h0 = p.at0() == 1, h1 = p.at1() == 1;
        (h0 ? high0 : low0) += 1;
        (h1 ? high1 : low1) += 1;
        if (!h0 && h1) up += 1;
        if (h0 && !h1) down += 1;
      }
      const Int na = b.s0 + a0 * low0, nb = b.s1 + a1 * high0;
      const Int nc = b.s0 + a0 * low1, nd = b.s1 + a1 * high1;
      if (na % b0 != 0 || nb % b0 != 0 || nc % b1 != 0 || nd % b1 != 0)
        throw HomDataError(pair_name(j, i) + ": endpoint multiplicities do not fit the target endpoint structure");
      blocks[j][i] = {na / b0, nb / b0, nc / b1, nd / b1, up - down};
    }
  return validate_diagram(A, B, std::move(blocks));
}

KKClass induced_kk(const HomomorphismData& h) { return canonicalize(induced_diagram(h)); }

ExistenceResult local_existence_report(const KKClass& x) {
  ExistenceResult out;
  for (std::size_t i = 0; i < x.source().size(); ++i) {
    const LiftDecision d = decide_stable_lift(compose(test_class(x.source(), i), x));
    if (!d.certificate) {
      out.reason = "condition (1): the test class through source summand " + std::to_string(i) +
                   " is not liftable (" + d.reason + ")";
      return out;
    }
  }
  const LiftDecision d = decide_unital_lift(x);
  if (!d.certificate) {
    out.reason = d.reason.find("exceeds") != std::string::npos ? "condition (2): " + d.reason
                                                                : "condition (1): " + d.reason;
    return out;
  }
  HomomorphismData data = realize(d.certificate->shifted);
  if (auto v = hom_data_violation(data, d.certificate->unital))
    throw std::logic_error("local_existence: realized data invalid: " + *v);
  if (!(induced_kk(data) == x)) throw std::logic_error("local_existence: realized data induces a different class");
  out.data = std::move(data);
  out.certificate = d.certificate;
  return out;
}

std::optional<HomomorphismData> local_existence(const KKClass& x) { return local_existence_report(x).data; }

}  // namespace kkcalc
