#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kkcalc/zmodule.hpp"
#include "property_support.hpp"

#include <algorithm>

using namespace kkcalc;

namespace {

bool divisibility_sorted(const IntMatrix& d) {
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Int& a = d(i, i);
    const Int& b = d(i + 1, i + 1);
    if (a < 0 || b < 0) return false;
    if (a == 0 && b != 0) return false;
    if (a != 0 && b % a != 0) return false;
  }
  return d.is_diagonal();
}

void check_snf(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(is_unimodular(s.u));
  CHECK(is_unimodular(s.v));
  CHECK(s.v * s.v_inv == IntMatrix::identity(m.cols()));
  CHECK(divisibility_sorted(s.d));
}

// Exhaustive search for a solution of M x = b with entries in [-r, r].
bool box_solvable(const IntMatrix& m, const IntVector& b, long r) {
  const std::size_t n = m.cols();
  std::vector<long> x(n, -r);
  while (true) {
    IntVector xv(x.begin(), x.end());
    if (m * xv == b) return true;
    std::size_t i = 0;
    while (i < n && x[i] == r) x[i++] = -r;
    if (i == n) return false;
    ++x[i];
  }
}

}  // namespace

TEST_CASE("smith normal form of a single row is the gcd") {
  const IntMatrix m{{6, -4}};
  const SmithForm s = smith_normal_form(m);
  CHECK(s.d == IntMatrix{{2, 0}});
  check_snf(m);
}

TEST_CASE("smith normal form of the identity") {
  const IntMatrix id = IntMatrix::identity(3);
  CHECK(smith_normal_form(id).d == id);
}

TEST_CASE("smith normal form of the Ĩ2 self-relation matrix") {
  const IntMatrix m{{2, -2, 0}, {0, 0, 2}};
  CHECK(smith_normal_form(m).d == IntMatrix{{2, 0, 0}, {0, 2, 0}});
}

TEST_CASE("solve_integer examples") {
  CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{3}).has_value());

  auto s = solve_integer(IntMatrix{{1, 1}}, IntVector{2});
  REQUIRE(s);
  CHECK(s->particular == IntVector{2, 0});
  REQUIRE(s->kernel_basis.size() == 1);
  CHECK(s->kernel_basis[0] == IntVector{1, -1});

  auto t = solve_integer(IntMatrix{{6, -4}}, IntVector{2});
  REQUIRE(t);
  CHECK(t->particular == IntVector{1, 1});
  REQUIRE(t->kernel_basis.size() == 1);
  CHECK(t->kernel_basis[0] == IntVector{2, 3});
}

TEST_CASE("group_invariants examples") {
  const FgGroup g = group_invariants(IntMatrix{{2, -2, 0}, {0, 0, 2}}, 3);
  CHECK(g.free_rank() == 1);
  CHECK(g.torsion_factors() == std::vector<Int>{2, 2});
  CHECK(g.describe() == "Z + Z_2 + Z_2");

  const FgGroup free2 = group_invariants(IntMatrix(0, 2), 2);
  CHECK(free2.free_rank() == 2);
  CHECK(free2.torsion_factors().empty());

  CHECK(group_invariants(IntMatrix{{1}}, 1).is_trivial());
}

TEST_CASE("hom_check_and_induce examples") {
  const FgGroup z = FgGroup::free(1);
  auto times2 = hom_check_and_induce(z, z, IntMatrix{{2}});
  REQUIRE(times2);
  CHECK(times2->kernel.is_trivial());
  CHECK(times2->cokernel.invariant_factors() == std::vector<Int>{2});

  CHECK_FALSE(hom_check_and_induce(FgGroup::cyclic(2), FgGroup::cyclic(3), IntMatrix{{1}}).has_value());

  auto three = hom_check_and_induce(FgGroup::cyclic(2), FgGroup::cyclic(2), IntMatrix{{3}});
  REQUIRE(three);
  CHECK(three->kernel.is_trivial());
  CHECK(three->cokernel.is_trivial());
  CHECK(three->hom.target.equal(three->hom.apply(IntVector{1}), IntVector{1}));
}

TEST_CASE("hom kernel and cokernel of a projection Z2 + Z4 -> Z4") {
  const FgGroup src(2, IntMatrix{{2, 0}, {0, 4}});
  const FgGroup tgt = FgGroup::cyclic(4);
  auto h = hom_check_and_induce(src, tgt, IntMatrix{{2, 1}});
  REQUIRE(h);
  // (x, y) -> 2x + y is onto with kernel of order 2.
  CHECK(h->cokernel.is_trivial());
  CHECK(h->kernel.order() == 2);
}

TEST_CASE("property: SNF identities on random matrices") {
  kktest::Gen g(0x5eed01);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(g.uniform(1, 5));
    const auto c = static_cast<std::size_t>(g.uniform(1, 5));
    check_snf(g.matrix(r, c, -9, 9));
  }
}

TEST_CASE("property: invariants are unchanged by unimodular transforms") {
  kktest::Gen g(0x5eed02);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(g.uniform(1, 4));
    const auto c = static_cast<std::size_t>(g.uniform(1, 4));
    const IntMatrix m = g.matrix(r, c, -6, 6);
    const IntMatrix t = g.unimodular(r, 6) * m * g.unimodular(c, 6);
    CHECK(group_invariants(m, c).invariant_factors() == group_invariants(t, c).invariant_factors());
  }
}

TEST_CASE("property: solve_integer is sound and complete on a box") {
  kktest::Gen g(0x5eed03);
  for (int trial = 0; trial < 150; ++trial) {
    const auto r = static_cast<std::size_t>(g.uniform(1, 2));
    const auto c = static_cast<std::size_t>(g.uniform(1, 3));
    const IntMatrix m = g.matrix(r, c, -4, 4);
    IntVector b;
    for (std::size_t i = 0; i < r; ++i) b.push_back(g.uniform(-6, 6));
    auto sol = solve_integer(m, b);
    if (sol) {
      CHECK(m * sol->particular == b);
      for (const auto& k : sol->kernel_basis) CHECK(is_zero(m * k));
    } else {
      CHECK_FALSE(box_solvable(m, b, 10));
    }
    if (box_solvable(m, b, 3)) CHECK(sol.has_value());
  }
}

TEST_CASE("property: kernel basis spans the full integer kernel") {
  kktest::Gen g(0x5eed04);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix m = g.matrix(1, 3, -5, 5);
    const IntMatrix k = integer_kernel(m);
    // Any small kernel vector must be an integer combination of the basis.
    for (long x = -3; x <= 3; ++x)
      for (long y = -3; y <= 3; ++y)
        for (long z = -3; z <= 3; ++z) {
          const IntVector v{x, y, z};
          if (!is_zero(m * v)) continue;
          CHECK(solve_integer(k, v).has_value());
        }
  }
}

TEST_CASE("property: determinism") {
  kktest::Gen g(0x5eed05);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix m = g.matrix(3, 4, -8, 8);
    const SmithForm a = smith_normal_form(m);
    const SmithForm b = smith_normal_form(m);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
    CHECK(a.d == b.d);
  }
}
