#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kkcalc/algebra.hpp"
#include "kkcalc/errors.hpp"

#include <cstdlib>
#include <numeric>

using namespace kkcalc;

TEST_CASE("validate_algebra") {
  CHECK_NOTHROW(single_block(1, 1, 2, 1));
  CHECK_NOTHROW(single_block(1, 2, 12, 3));
  CHECK_THROWS_AS(single_block(1, 2, 3, 1), DivisibilityError);
  CHECK_THROWS_AS(single_block(0, 1, 2, 1), NonPositiveError);
  CHECK_THROWS_AS(single_block(1, -1, 2, 1), NonPositiveError);
  CHECK_THROWS_AS(DirectSumAlgebra(std::vector<DimDropBlock>{}), NonPositiveError);
}

TEST_CASE("k_theory examples") {
  {
    const auto kt = k_theory(single_block(1, 1, 2, 1)).blocks.at(0);
    CHECK(kt.g0 == 1);
    CHECK(kt.g1 == 1);
    CHECK(kt.unit_coefficient == 1);
    CHECK(kt.k1_order == 2);
    CHECK(kt.k0.free_rank() == 1);
  }
  {
    const auto kt = k_theory(single_block(1, 2, 12, 3)).blocks.at(0);
    CHECK(kt.g0 == 2);
    CHECK(kt.g1 == 3);
    CHECK(kt.unit_coefficient == 1);
    CHECK(kt.k1_order == 2);
  }
  {
    const auto kt = k_theory(single_block(1, 2, 4, 2)).blocks.at(0);
    CHECK(kt.g0 == 1);
    CHECK(kt.g1 == 1);
    CHECK(kt.unit_coefficient == 2);
    CHECK(kt.k1_order == 2);
    CHECK(kt.in_scale(2));
    CHECK_FALSE(kt.in_scale(3));
  }
}

TEST_CASE("total_k examples") {
  const auto a = single_block(1, 1, 2, 1);
  const auto t = total_k(a, {1, 2, 3});
  CHECK(t.part(2).k0.group.order() == 4);
  CHECK(t.part(2).k1.group.order() == 2);
  CHECK(t.part(3).k0.group.order() == 3);
  CHECK(t.part(3).k1.group.is_trivial());
  CHECK(t.part(1).k0.group.is_trivial());
  CHECK(t.part(1).k1.group.is_trivial());
  CHECK(t.bockstein_exact());
}

TEST_CASE("coefficient set and environment bound") {
  CHECK(coefficient_set(24) == std::vector<std::int64_t>{2, 3, 4, 6, 8, 12, 24});
  ::unsetenv("KKCALC_COEFF_BOUND");
  CHECK(coefficient_bound_from_env() == 24);
  ::setenv("KKCALC_COEFF_BOUND", "12", 1);
  CHECK(coefficient_bound_from_env() == 12);
  ::setenv("KKCALC_COEFF_BOUND", "x", 1);
  CHECK_THROWS_AS(coefficient_bound_from_env(), InputError);
  ::unsetenv("KKCALC_COEFF_BOUND");
}

TEST_CASE("property: unit class and K1 order over all blocks with m <= 24") {
  for (std::int64_t m = 1; m <= 24; ++m)
    for (std::int64_t m0 = 1; m0 <= m; ++m0)
      for (std::int64_t m1 = 1; m1 <= m; ++m1) {
        if (m % m0 || m % m1) continue;
        for (std::int64_t r : {1, 2, 3}) {
          const auto kt = k_theory(single_block(r, m0, m, m1)).blocks.at(0);
          CHECK(kt.unit_coefficient * kt.g0 == r * m0);
          CHECK(kt.unit_coefficient * kt.g1 == r * m1);
          CHECK(kt.k1_order == std::gcd(m / m0, m / m1));
          CHECK(kt.g0 > 0);
          CHECK(kt.g1 > 0);
          // Generator spans the kernel of (m/m0, -m/m1).
          CHECK((m / m0) * kt.g0 == (m / m1) * kt.g1);
          CHECK(std::gcd(kt.g0.get_si(), kt.g1.get_si()) == 1);
          // Amplification consistency.
          const auto amp = k_theory(single_block(1, r * m0, r * m, r * m1)).blocks.at(0);
          CHECK(amp.g0 == kt.g0);
          CHECK(amp.g1 == kt.g1);
          CHECK(amp.unit_coefficient == kt.unit_coefficient);
          CHECK(amp.k1_order == kt.k1_order);
        }
      }
}

TEST_CASE("property: coefficient group orders and Bockstein exactness") {
  for (std::int64_t m = 1; m <= 12; ++m)
    for (std::int64_t m0 = 1; m0 <= m; ++m0)
      for (std::int64_t m1 = 1; m1 <= m; ++m1) {
        if (m % m0 || m % m1) continue;
        const auto a = single_block(1, m0, m, m1);
        const std::int64_t p = std::gcd(m / m0, m / m1);
        const auto t = total_k(a, {2, 3, 4, 6});
        for (const auto& part : t.parts) {
          CHECK(part.k0.group.order() == part.n * std::gcd(p, part.n));
          if (std::gcd(p, part.n) == 1)
            CHECK(part.k1.group.is_trivial());
          else
            CHECK(part.k1.group.order() == std::gcd(p, part.n));
        }
        CHECK(t.bockstein_exact());
      }
}

TEST_CASE("direct sums: Bockstein exactness and transforms") {
  const DirectSumAlgebra a({{1, 1, 2, 1}, {2, 2, 12, 3}, {1, 3, 6, 2}});
  const auto t = total_k(a, coefficient_set(12));
  CHECK(t.k0.group.free_rank() == 3);
  CHECK(t.k1.group.order() == 2 * 2 * 1);
  CHECK(t.bockstein_exact());
  CHECK_FALSE(t.transforms.empty());
  for (const auto& tr : t.transforms) {
    CHECK(hom_check_and_induce(tr.deg0.source, tr.deg0.target, tr.deg0.matrix).has_value());
    CHECK(hom_check_and_induce(tr.deg1.source, tr.deg1.target, tr.deg1.matrix).has_value());
  }
}
