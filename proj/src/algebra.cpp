#include "kkcalc/algebra.hpp"

#include "kkcalc/errors.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace kkcalc {

std::int64_t DimDropBlock::k1_order() const { return std::gcd(ratio0(), ratio1()); }

std::string DimDropBlock::describe() const {
  std::ostringstream os;
  if (r != 1) os << "M_" << r << "(";
  os << "I[" << m0 << "," << m << "," << m1 << "]";
  if (r != 1) os << ")";
  return os.str();
}

DirectSumAlgebra::DirectSumAlgebra(std::vector<DimDropBlock> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) throw NonPositiveError("algebra must have at least one summand");
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const auto& b = summands_[i];
    if (b.r <= 0 || b.m0 <= 0 || b.m <= 0 || b.m1 <= 0) {
      std::ostringstream os;
      os << "summand " << i << ": r, m0, m, m1 must be positive (got r=" << b.r << ", m0=" << b.m0
         << ", m=" << b.m << ", m1=" << b.m1 << ")";
      throw NonPositiveError(os.str());
    }
    if (b.m % b.m0 != 0 || b.m % b.m1 != 0) {
      std::ostringstream os;
      os << "summand " << i << ": m0 and m1 must divide m (got m0=" << b.m0 << ", m=" << b.m << ", m1=" << b.m1
         << ")";
      throw DivisibilityError(os.str());
    }
  }
}

std::string DirectSumAlgebra::describe() const {
  std::string s;
  for (std::size_t i = 0; i < summands_.size(); ++i) s += (i ? " + " : "") + summands_[i].describe();
  return s;
}

DirectSumAlgebra validate_algebra(std::vector<DimDropBlock> summands) { return DirectSumAlgebra(std::move(summands)); }

DirectSumAlgebra single_block(std::int64_t r, std::int64_t m0, std::int64_t m, std::int64_t m1) {
  return DirectSumAlgebra({DimDropBlock{r, m0, m, m1}});
}

IntVector KTheoryData::unit_class() const {
  IntVector u;
  for (const auto& b : blocks) u.push_back(b.unit_coefficient);
  return u;
}

bool KTheoryData::in_scale(const IntVector& k0_class) const {
  if (k0_class.size() != blocks.size()) return false;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (!blocks[i].in_scale(k0_class[i])) return false;
  return true;
}

namespace {

BlockKTheory block_k_theory(const DimDropBlock& b) {
  // 0 -> K0 -> Z^2 --(m/m0, -m/m1)--> Z -> K1 -> 0
  const IntMatrix index_map{{b.ratio0(), -b.ratio1()}};
  auto ker = solve_integer(index_map, IntVector{0});
  BlockKTheory kt;
  kt.g0 = ker->kernel_basis.at(0)[0];
  kt.g1 = ker->kernel_basis.at(0)[1];
  kt.k0 = FgGroup::free(1);
  kt.k1 = group_invariants(index_map.transpose(), 1);
  kt.k1_order = kt.k1.is_trivial() ? Int(1) : kt.k1.order();
  const Int e0 = b.eff_m0(), e1 = b.eff_m1();
  kt.unit_coefficient = e0 / kt.g0;
  if (kt.unit_coefficient * kt.g0 != e0 || kt.unit_coefficient * kt.g1 != e1)
    throw std::logic_error("unit class is not a multiple of the K0 generator");
  return kt;
}

}  // namespace

KTheoryData k_theory(const DirectSumAlgebra& a) {
  KTheoryData out;
  for (const auto& b : a.summands()) out.blocks.push_back(block_k_theory(b));
  return out;
}

IntVector Homology::coordinates_of(const IntVector& v) const {
  auto sol = solve_integer(basis, v);
  if (!sol) throw std::logic_error("Homology::coordinates_of: vector is not a cycle");
  return sol->particular;
}

Homology homology_with_basis(IntMatrix basis, const IntMatrix& d_in) {
  IntMatrix rel(d_in.cols(), basis.cols());
  const IntegerSolver solver(basis);
  for (std::size_t j = 0; j < d_in.cols(); ++j) {
    auto sol = solver.particular(d_in.column(j));
    if (!sol) throw std::logic_error("homology: boundary is not a cycle");
    for (std::size_t k = 0; k < basis.cols(); ++k) rel(j, k) = (*sol)[k];
  }
  const std::size_t rank = basis.cols();
  return Homology{std::move(basis), FgGroup(rank, rel)};
}

Homology homology(const IntMatrix& d_in, const IntMatrix& d_out) {
  IntMatrix basis = d_out.rows() == 0 ? IntMatrix::identity(d_out.cols()) : integer_kernel(d_out);
  return homology_with_basis(std::move(basis), d_in);
}

GroupHom induced_on_homology(const Homology& src, const Homology& tgt, const IntMatrix& chain) {
  IntMatrix m(tgt.basis.cols(), src.basis.cols());
  const IntegerSolver solver(tgt.basis);
  for (std::size_t j = 0; j < src.basis.cols(); ++j) {
    const IntVector img = chain * src.basis.column(j);
    auto c = solver.particular(img);
    if (!c) throw std::logic_error("induced_on_homology: chain map does not preserve cycles");
    for (std::size_t i = 0; i < c->size(); ++i) m(i, j) = (*c)[i];
  }
  return GroupHom{src.group, tgt.group, std::move(m)};
}

IntMatrix KComplex::cone_d_minus(std::int64_t n) const {
  IntMatrix d(c1() + c0(), c0());
  for (std::size_t i = 0; i < c1(); ++i)
    for (std::size_t j = 0; j < c0(); ++j) d(i, j) = -boundary(i, j);
  for (std::size_t j = 0; j < c0(); ++j) d(c1() + j, j) = n;
  return d;
}

IntMatrix KComplex::cone_d_zero(std::int64_t n) const {
  IntMatrix d(c1(), c1() + c0());
  for (std::size_t i = 0; i < c1(); ++i) d(i, i) = n;
  d.set_block(0, c1(), boundary);
  return d;
}

KComplex k_complex(const DirectSumAlgebra& a) {
  const std::size_t n = a.size();
  IntMatrix bd(n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    bd(j, 2 * j) = a[j].ratio0();
    bd(j, 2 * j + 1) = -a[j].ratio1();
  }
  return KComplex{std::move(bd)};
}

namespace chain {

IntMatrix rho0(const KComplex& c) {
  IntMatrix m(c.c1() + c.c0(), c.c0());
  for (std::size_t j = 0; j < c.c0(); ++j) m(c.c1() + j, j) = 1;
  return m;
}

IntMatrix beta0(const KComplex& c) {
  IntMatrix m(c.c1(), c.c1() + c.c0());
  for (std::size_t i = 0; i < c.c1(); ++i) m(i, i) = 1;
  return m;
}

IntMatrix coefficient_up_deg0(const KComplex& c, std::int64_t factor) {
  IntMatrix m = IntMatrix::identity(c.c1() + c.c0());
  for (std::size_t j = 0; j < c.c0(); ++j) m(c.c1() + j, c.c1() + j) = factor;
  return m;
}

IntMatrix coefficient_down_deg0(const KComplex& c, std::int64_t factor) {
  IntMatrix m = IntMatrix::identity(c.c1() + c.c0());
  for (std::size_t i = 0; i < c.c1(); ++i) m(i, i) = factor;
  return m;
}

}  // namespace chain

namespace {

IntMatrix scalar(std::size_t n, std::int64_t k) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k;
  return m;
}

Homology k0_homology(const DirectSumAlgebra& a, const KComplex& c) {
  const KTheoryData kt = k_theory(a);
  IntMatrix basis(c.c0(), a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    basis(2 * j, j) = kt.blocks[j].g0;
    basis(2 * j + 1, j) = kt.blocks[j].g1;
  }
  return homology_with_basis(std::move(basis), IntMatrix(c.c0(), 0));
}

bool exact_at(const GroupHom& f, const GroupHom& g) {
  for (std::size_t j = 0; j < f.matrix.cols(); ++j)
    if (!g.target.is_zero(g.matrix * f.matrix.column(j))) return false;
  return same_subgroup(g.source, f.matrix, kernel_generators(g));
}

}  // namespace

GroupHom TotalKModule::times_n_k0(std::int64_t n) const {
  return induced_on_homology(k0, k0, scalar(k0.ambient_dim(), n));
}

GroupHom TotalKModule::times_n_k1(std::int64_t n) const {
  return induced_on_homology(k1, k1, scalar(k1.ambient_dim(), n));
}

const CoefficientPart& TotalKModule::part(std::int64_t n) const {
  for (const auto& p : parts)
    if (p.n == n) return p;
  throw std::out_of_range("TotalKModule::part: coefficient not configured");
}

bool TotalKModule::bockstein_exact() const {
  for (const auto& p : parts) {
    const GroupHom n0 = times_n_k0(p.n), n1 = times_n_k1(p.n);
    if (!exact_at(n0, p.rho0) || !exact_at(p.rho0, p.beta0) || !exact_at(p.beta0, n1) || !exact_at(n1, p.rho1) ||
        !exact_at(p.rho1, p.beta1) || !exact_at(p.beta1, n0))
      return false;
  }
  return true;
}

TotalKModule total_k(const DirectSumAlgebra& a, const std::vector<std::int64_t>& coefficients) {
  const KComplex c = k_complex(a);
  TotalKModule t;
  t.algebra = a;
  t.k0 = k0_homology(a, c);
  t.k1 = homology(c.boundary, IntMatrix(0, c.c1()));
  for (std::int64_t n : coefficients) {
    if (n < 1) throw DomainError("coefficient orders must be positive");
    CoefficientPart p;
    p.n = n;
    p.k0 = homology(c.cone_d_minus(n), c.cone_d_zero(n));
    p.k1 = homology(c.cone_d_zero(n), IntMatrix(0, c.c1()));
    p.rho0 = induced_on_homology(t.k0, p.k0, chain::rho0(c));
    p.rho1 = induced_on_homology(t.k1, p.k1, IntMatrix::identity(c.c1()));
    p.beta0 = induced_on_homology(p.k0, t.k1, chain::beta0(c));
    p.beta1 = induced_on_homology(p.k1, t.k0, IntMatrix(c.c0(), c.c1()));
    t.parts.push_back(std::move(p));
  }
  for (const auto& lo : t.parts)
    for (const auto& hi : t.parts) {
      if (lo.n == hi.n || hi.n % lo.n != 0) continue;
      const std::int64_t f = hi.n / lo.n;
      t.transforms.push_back({lo.n, hi.n, true, induced_on_homology(lo.k0, hi.k0, chain::coefficient_up_deg0(c, f)),
                              induced_on_homology(lo.k1, hi.k1, scalar(c.c1(), f))});
      t.transforms.push_back({hi.n, lo.n, false,
                              induced_on_homology(hi.k0, lo.k0, chain::coefficient_down_deg0(c, f)),
                              induced_on_homology(hi.k1, lo.k1, IntMatrix::identity(c.c1()))});
    }
  return t;
}

std::vector<std::int64_t> coefficient_set(std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= bound; ++n)
    if (bound % n == 0) out.push_back(n);
  return out;
}

std::int64_t coefficient_bound_from_env() {
  const char* v = std::getenv("KKCALC_COEFF_BOUND");
  if (v == nullptr || *v == '\0') return kDefaultCoefficientBound;
  char* end = nullptr;
  const long long b = std::strtoll(v, &end, 10);
  if (*end != '\0' || b < 1) throw InputError(std::string("KKCALC_COEFF_BOUND must be a positive integer, got '") + v + "'");
  return b;
}

}  // namespace kkcalc
