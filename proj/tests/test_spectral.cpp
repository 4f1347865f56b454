#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kkcalc/errors.hpp"
#include "kkcalc/lift.hpp"
#include "kkcalc/spectral.hpp"
#include "kk_support.hpp"

#include <algorithm>
#include <numeric>

using namespace kkcalc;

namespace {

const DirectSumAlgebra C01 = single_block(1, 1, 1, 1);
const DirectSumAlgebra I2 = single_block(1, 1, 2, 1);

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

HomomorphismData paths_only(const DirectSumAlgebra& a, const DirectSumAlgebra& b, std::vector<PLPath> paths) {
  return validate_hom_data(a, b, {{BlockHomData{0, 0, std::move(paths)}}});
}

// min over permutations of the max coordinate gap
Rational brute_matching(const std::vector<Rational>& x, std::vector<Rational> y) {
  std::vector<std::size_t> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rational best = -1;
  do {
    Rational worst = 0;
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, Rational(abs(x[k] - y[idx[k]])));
    if (best < 0 || worst < best) best = worst;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

std::vector<Rational> sorted_interior(const HomomorphismData& h, const Rational& t) {
  return spectrum_at(h, 0, 0, t).interior_points;
}

}  // namespace

TEST_CASE("spectrum_at examples") {
  const auto h = paths_only(C01, C01, {PLPath::linear(0, 1)});
  CHECK(sorted_interior(h, q(1, 2)) == std::vector<Rational>{q(1, 2)});
  const auto c = paths_only(C01, C01, {PLPath::constant(q(3, 10))});
  for (int k = 0; k <= 4; ++k) CHECK(sorted_interior(c, q(k, 4)) == std::vector<Rational>{q(3, 10)});
  CHECK_THROWS_AS(spectrum_at(h, q(3, 2)), DomainError);
  CHECK_THROWS_AS(spectrum_at(h, q(-1, 5)), DomainError);
}

TEST_CASE("hom data validation") {
  // s0 must stay below m/m0 = 2.
  CHECK_THROWS_AS(validate_hom_data(I2, I2, {{BlockHomData{2, 0, {}}}}), HomDataError);
  CHECK_THROWS_AS(validate_hom_data(C01, C01, {{BlockHomData{0, 0, {PLPath::linear(0, 2)}}}}), HomDataError);
  // Target I[1,2,1] needs endpoint fibers in pairs.
  CHECK_THROWS_AS(validate_hom_data(C01, I2, {{BlockHomData{0, 0, {PLPath::constant(0)}}}}), HomDataError);
  CHECK_NOTHROW(validate_hom_data(C01, I2, {{BlockHomData{0, 0, {PLPath::linear(0, q(1, 2)), PLPath::linear(0, q(1, 2))}}}}));
  CHECK_THROWS_AS(validate_hom_data(C01, C01, {{BlockHomData{0, 0, {PLPath(), PLPath()}}}}), HomDataError);
  CHECK(is_unital(HomomorphismData::identity(I2)));
}

TEST_CASE("matching_distance examples") {
  CHECK(matching_distance({q(1, 10), q(1, 2)}, {q(1, 5), q(9, 10)}) == q(2, 5));
  CHECK(matching_distance({q(1, 10), q(1, 2)}, {q(9, 10), q(1, 5)}) == q(2, 5));
}

TEST_CASE("spv examples") {
  CHECK(spv(paths_only(C01, C01, {PLPath::linear(0, 1)})) == 1);
  CHECK(spv(paths_only(C01, single_block(2, 1, 1, 1), {PLPath::constant(q(1, 3)), PLPath::constant(q(1, 2))})) == 0);
  // Spectrum {.1,.5} at t=0 and {.2,.9} at t=1.
  const auto h = paths_only(C01, single_block(2, 1, 1, 1),
                            {PLPath::linear(q(1, 10), q(1, 5)), PLPath::linear(q(1, 2), q(9, 10))});
  CHECK(spv(h) == q(2, 5));
  // Crossing paths: the sorted spectrum goes from {0,1} to {1/2,1/2} and back.
  const auto x = paths_only(C01, single_block(2, 1, 1, 1), {PLPath::linear(0, 1), PLPath::linear(1, 0)});
  CHECK(spv(x) == q(1, 2));
}

TEST_CASE("compose_hom_data examples") {
  const auto half = paths_only(C01, C01, {PLPath::linear(0, q(1, 2))});
  const auto square = paths_only(C01, C01, {PLPath({{0, 0}, {q(1, 4), q(1, 16)}, {q(1, 2), q(1, 4)}, {q(3, 4), q(9, 16)}, {1, 1}})});
  const auto gf = compose_hom_data(half, square);
  REQUIRE(gf.at(0, 0).paths.size() == 1);
  CHECK(gf.at(0, 0).paths[0] == PLPath({{0, 0}, {q(1, 4), q(1, 32)}, {q(1, 2), q(1, 8)}, {q(3, 4), q(9, 32)}, {1, q(1, 2)}}));
  for (int k = 0; k <= 4; ++k) {
    const Rational t = q(k, 4);
    CHECK(sorted_interior(gf, t) == std::vector<Rational>{square.at(0, 0).paths[0](t) / 2});
  }
  const auto id = HomomorphismData::identity(C01);
  CHECK(compose_hom_data(id, half) == half);
  CHECK(compose_hom_data(half, id) == half);
  CHECK_THROWS_AS(compose_hom_data(half, HomomorphismData::identity(I2)), AlgebraMismatchError);
}

TEST_CASE("omega_bounds examples") {
  const auto h = paths_only(C01, C01, {PLPath::linear(q(1, 10), q(1, 2))});
  const auto b = omega_bounds({PLPath::linear(0, 1), PLPath::linear(1, 0)}, h);
  CHECK(b.spv == q(2, 5));
  CHECK(b.upper == q(2, 5));
  CHECK(b.lower == q(2, 5));
  const auto one = omega_bounds({PLPath::linear(0, 1)}, h);
  CHECK(one.lower == one.spv);
  CHECK(one.upper == one.spv);
  const auto flat = omega_bounds({PLPath::constant(q(1, 3)), PLPath::constant(1)}, h);
  CHECK(flat.lower == 0);
  CHECK(flat.upper == 0);
}

TEST_CASE("decompose examples") {
  const Rational tol(1, 10);
  std::vector<PLPath> hundred(100, PLPath::constant(q(3, 10)));
  CHECK(decompose(paths_only(C01, single_block(100, 1, 1, 1), hundred), tol, 1));

  hundred.push_back(PLPath::linear(0, 1));
  const auto d = decompose(paths_only(C01, single_block(101, 1, 1, 1), hundred), tol, 50);
  REQUIRE(d);
  CHECK(d->finite_rank == std::vector<Int>{100});
  CHECK(d->corner_rank == std::vector<Int>{1});
  CHECK(d->corner.path_count() == 1);
  CHECK(d->max_displacement == 0);

  CHECK_FALSE(decompose(paths_only(C01, C01, {PLPath::linear(0, 1)}), tol, 1));
  CHECK_FALSE(decompose(paths_only(C01, single_block(101, 1, 1, 1), hundred), tol, 101));
  CHECK_THROWS_AS(decompose(paths_only(C01, C01, {PLPath::linear(0, 1)}), Rational(-1), 1), DomainError);

  // Snapping a slowly moving path displaces it by at most tol.
  const auto s = split_paths(paths_only(C01, single_block(2, 1, 1, 1), {PLPath::linear(q(1, 2), q(3, 5)), PLPath::linear(0, 1)}), tol, 1);
  CHECK(s.max_displacement == q(1, 20));
  CHECK(s.finite_part.path_count() == 1);
  CHECK(s.finite_part.at(0, 0).paths[0].is_constant());
  CHECK(s.condition_holds);
}

TEST_CASE("finite_rep_match examples") {
  const DimDropBlock i2{1, 1, 2, 1};
  const auto t = finite_rep_match({3, 1}, {1, 3}, i2, i2);
  CHECK(t.kind == MatchReport::Kind::Transfer);
  CHECK(t.l == Int(1));
  CHECK(finite_rep_match({2, 2}, {2, 2}, i2, i2).kind == MatchReport::Kind::Equivalent);
  // (5,0) vs (1,1): k2 is too small to dominate; transfer needs 4 = 2l and 1 = 2l.
  // Range reduction gives (1,0) vs (1,1), still unrelated.
  CHECK_THROWS_AS(finite_rep_match({5, 0}, {1, 1}, i2, i2), IncompatibleRepError);
  // Unital into M_2: m0 k1 + m1 k2 = 2.
  const DimDropBlock m2{2, 1, 1, 1};
  const auto dom = finite_rep_match({2, 0, true}, {1, 0}, i2, m2);
  CHECK(dom.kind == MatchReport::Kind::Dominated);
  CHECK(dom.eta == FiniteDimRep{1, 0});
  CHECK_THROWS_AS(finite_rep_match({1, 0, true}, {1, 0}, i2, m2), DomainError);
  CHECK_THROWS_AS(finite_rep_match({-1, 0}, {1, 0}, i2, m2), DomainError);
  // (3,1) vs (1,1): 2 = 2l but 0 = 2l; reducing k1 mod 2 leaves (1,1) twice.
  const auto rr = finite_rep_match({3, 1}, {1, 1}, i2, i2);
  CHECK(rr.range_reduced);
  CHECK(rr.kind == MatchReport::Kind::Equivalent);
}

TEST_CASE("property: sorted matching is optimal") {
  kktest::Gen g(11);
  // Every pair of multisets of size <= 3 over {0, 1/3, 2/3, 1}.
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < 2 * n; ++k) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Rational> x, y;
      std::size_t c = code;
      for (std::size_t k = 0; k < n; ++k, c /= 4) x.push_back(q(static_cast<long>(c % 4), 3));
      for (std::size_t k = 0; k < n; ++k, c /= 4) y.push_back(q(static_cast<long>(c % 4), 3));
      CHECK(matching_distance(x, y) == brute_matching(x, y));
    }
  }
  // Sizes up to 6 on a finer grid.
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Rational> x, y;
      for (std::size_t k = 0; k < n; ++k) {
        x.push_back(q(g.uniform(0, 8), 8));
        y.push_back(q(g.uniform(0, 8), 8));
      }
      CHECK(matching_distance(x, y) == brute_matching(x, y));
    }
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.uniform(1, 6));
    std::vector<Rational> x, y;
    for (std::size_t k = 0; k < n; ++k) {
      x.push_back(q(g.uniform(0, 1000), 1000));
      y.push_back(q(g.uniform(0, 1000), 1000));
    }
    CHECK(matching_distance(x, y) == brute_matching(x, y));
  }
}

TEST_CASE("property: spv dominates any sampled pair and is attained on breakpoints or crossings") {
  kktest::Gen g(12);
  for (int trial = 0; trial < 150; ++trial) {
    const long n = g.uniform(1, 4);
    std::vector<PLPath> paths;
    for (long k = 0; k < n; ++k) paths.push_back(kktest::random_path(g, q(g.uniform(0, 6), 6), q(g.uniform(0, 6), 6)));
    const auto h = paths_only(C01, single_block(n, 1, 1, 1), paths);
    const Rational v = spv(h);
    // Candidate times: all breakpoints and pairwise crossings.
    std::vector<Rational> ts;
    for (const auto& p : paths)
      for (const auto& t : p.breakpoints()) ts.push_back(t);
    for (std::size_t a = 0; a < paths.size(); ++a)
      for (std::size_t b = a + 1; b < paths.size(); ++b)
        for (const auto& t : crossings(paths[a], paths[b])) ts.push_back(t);
    Rational best = 0;
    for (const auto& s : ts)
      for (const auto& t : ts) best = std::max(best, brute_matching(sorted_interior(h, s), sorted_interior(h, t)));
    CHECK(v == best);
    for (int k = 0; k <= 24; ++k)
      for (int l = k + 1; l <= 24; l += 5)
        CHECK(matching_distance(sorted_interior(h, q(k, 24)), sorted_interior(h, q(l, 24))) <= v);
  }
}

TEST_CASE("property: interior spectrum size is t independent") {
  kktest::Gen g(13);
  int made = 0;
  for (int trial = 0; trial < 300 && made < 60; ++trial) {
    const auto a = kktest::random_algebra(g), b = kktest::random_algebra(g, 2, 6, 12);
    const auto h = kktest::random_hom(g, a, b, 3);
    if (!h) continue;
    ++made;
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t size = spectrum_at(*h, j, i, 0).interior_points.size();
        for (int k = 1; k <= 6; ++k) CHECK(spectrum_at(*h, j, i, q(k, 6)).interior_points.size() == size);
      }
  }
  CHECK(made >= 30);
}

TEST_CASE("property: induced class ignores relabeling, homotopy and identity composition") {
  kktest::Gen g(14);
  int made = 0;
  for (int trial = 0; trial < 400 && made < 80; ++trial) {
    const auto a = kktest::random_algebra(g), b = kktest::random_algebra(g, 2, 6, 12);
    const auto h = kktest::random_hom(g, a, b, 3);
    if (!h) continue;
    ++made;
    const KKClass x = induced_kk(*h);
    HomomorphismData shuffled = *h;
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::size_t i = 0; i < a.size(); ++i) std::shuffle(shuffled.at(j, i).paths.begin(), shuffled.at(j, i).paths.end(), g.engine());
    CHECK(induced_kk(shuffled) == x);
    CHECK(induced_kk(kktest::wiggle(g, *h)) == x);
    CHECK(induced_kk(compose_hom_data(*h, HomomorphismData::identity(b))) == x);
    CHECK(induced_kk(compose_hom_data(HomomorphismData::identity(a), *h)) == x);
  }
  CHECK(made >= 40);
}

TEST_CASE("property: composition of data is functorial on KK") {
  kktest::Gen g(15);
  int made = 0;
  for (int trial = 0; trial < 2000 && made < 100; ++trial) {
    const auto a = kktest::random_algebra(g, 2, 4, 1), b = kktest::random_algebra(g, 2, 4, 8);
    const auto c = kktest::random_algebra(g, 2, 4, 80);
    const auto f = kktest::random_hom(g, a, b, 2);
    if (!f) continue;
    const auto h = kktest::random_hom(g, b, c, 2);
    if (!h) continue;
    const HomomorphismData gf = compose_hom_data(*f, *h);
    if (hom_data_violation(gf, false)) continue;
    ++made;
    CHECK(induced_kk(gf) == compose(induced_kk(*f), induced_kk(*h)));
  }
  CHECK(made == 100);
}

TEST_CASE("property: omega lower <= upper") {
  kktest::Gen g(16);
  for (int trial = 0; trial < 200; ++trial) {
    const long n = g.uniform(1, 3);
    std::vector<PLPath> paths;
    for (long k = 0; k < n; ++k) paths.push_back(kktest::random_path(g, q(g.uniform(0, 6), 6), q(g.uniform(0, 6), 6)));
    const auto h = paths_only(C01, single_block(n, 1, 1, 1), paths);
    std::vector<PLPath> profiles;
    for (long k = 0, np = g.uniform(1, 3); k < np; ++k)
      profiles.push_back(kktest::random_path(g, q(g.uniform(0, 6), 6), q(g.uniform(0, 6), 6)));
    const auto b = omega_bounds(profiles, h);
    CHECK(b.lower <= b.upper);
    std::vector<PLPath> constants(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) constants[k] = PLPath::constant(paths[k](q(1, 2)));
    const auto z = omega_bounds(profiles, paths_only(C01, single_block(n, 1, 1, 1), constants));
    CHECK(z.spv == 0);
    CHECK(z.lower == 0);
    CHECK(z.upper == 0);
  }
}

TEST_CASE("property: decompose success guarantees") {
  kktest::Gen g(17);
  for (int trial = 0; trial < 200; ++trial) {
    const long n = g.uniform(1, 8);
    std::vector<PLPath> paths;
    for (long k = 0; k < n; ++k) {
      const Rational v = q(g.uniform(0, 12), 12);
      paths.push_back(g.coin() ? PLPath::constant(v) : kktest::random_path(g, v, q(g.uniform(0, 12), 12)));
    }
    const auto h = paths_only(C01, single_block(n, 1, 1, 1), paths);
    const Rational tol(g.uniform(0, 4), 12);
    const Int L = g.uniform(1, 4);
    const auto d = decompose(h, tol, L);
    const auto s = split_paths(h, tol, L);
    CHECK(d.has_value() == s.condition_holds);
    CHECK(s.max_displacement <= tol);
    CHECK(s.finite_part.path_count() + s.corner.path_count() == h.path_count());
    for (const auto& p : s.finite_part.at(0, 0).paths) CHECK(p.is_constant());
    if (d) CHECK(d->finite_rank[0] >= L * d->corner_rank[0]);
  }
}

TEST_CASE("property: transfer equations share one l") {
  // Whenever both transfer equations are solvable, the solutions agree.
  for (long m = 1; m <= 6; ++m)
    for (long m0 = 1; m0 <= m; ++m0)
      for (long m1 = 1; m1 <= m; ++m1) {
        if (m % m0 || m % m1) continue;
        const DimDropBlock s{1, m0, m, m1};
        const DimDropBlock t{m, 1, 1, 1};
        for (long k1 = 0; k1 <= m / m0; ++k1)
          for (long k1p = 0; k1p <= m / m0; ++k1p) {
            if ((k1 - k1p) * m0 % m1) continue;
            const long k2 = (m - m0 * k1) / m1, k2p = (m - m0 * k1p) / m1;
            if ((m - m0 * k1) % m1 || (m - m0 * k1p) % m1 || k2 < 0 || k2p < 0) continue;
            try {
              const auto r = finite_rep_match({k1, k2, true}, {k1p, k2p, true}, s, t);
              if (r.kind == MatchReport::Kind::Transfer) {
                const Int a0 = s.ratio0(), a1 = s.ratio1();
                CHECK((r.lam.k1 - r.lam2.k1) == *r.l * a0);
                CHECK((r.lam2.k2 - r.lam.k2) == *r.l * a1);
              }
            } catch (const IncompatibleRepError&) {
            }
          }
      }
}
