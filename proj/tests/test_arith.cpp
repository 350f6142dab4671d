#include <vector>

#include "doctest.h"
#include "ecogen/arith.hpp"

using namespace ecogen;

namespace {

BigInt binom(long n, long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Poly P(std::initializer_list<long> c) { return Poly(c); }

}  // namespace

TEST_CASE("poly basics") {
  Poly p{1, 2, 0, 0};
  CHECK(p.degree() == 1);
  CHECK(Poly{}.is_zero());
  CHECK(Poly{0, 0}.degree() == -1);
  CHECK((P({1, 1}) * P({1, -1})) == P({1, 0, -1}));
  CHECK(P({1, 2, 3}).eval(2) == 17);
  CHECK(P({1, 2, 3}).derivative() == P({2, 6}));
  CHECK(to_string(P({1, -1, -1})) == "1 - z - z^2");
}

TEST_CASE("poly division and gcd") {
  const Poly a = P({-1, 0, 0, 1});  // z^3 - 1
  const Poly b = P({-1, 1});
  auto d = divmod(a, b);
  CHECK(d.quotient == P({1, 1, 1}));
  CHECK(d.remainder.is_zero());
  CHECK(poly_gcd(P({1, 0, -1}), P({-1, 0, 0, 1})) == P({-1, 1}));
  const auto eg = extended_gcd(P({2, 1}), P({-1, 1}));
  CHECK(eg.gcd == P({1}));
  CHECK(eg.s * P({2, 1}) + eg.t * P({-1, 1}) == P({1}));
  CHECK_THROWS_AS(divmod(a, Poly{}), ArithmeticError);
}

TEST_CASE("series arithmetic") {
  const Series one_minus_z = Series::from_ints({1, -1}, 10);
  const Series geo = series_inverse(one_minus_z);
  for (std::size_t i = 0; i < 10; ++i) CHECK(geo[i] == 1);
  const Series sq = geo * geo;
  for (std::size_t i = 0; i < 10; ++i) CHECK(sq[i] == static_cast<long>(i) + 1);
  CHECK(series_pow(geo, 3)[4] == 15);
  CHECK((geo - geo).is_zero());
  CHECK(geo.shifted_up(2).valuation() == 2);
  CHECK(geo.shifted_up(2).shifted_down(2) == geo);
}

TEST_CASE("series division with valuation") {
  const Series a = Series::from_ints({0, 0, 1, 1}, 8);
  const Series b = Series::from_ints({0, 1}, 8);
  const Series q = series_div(a, b);
  CHECK(q.order() == 7);
  CHECK(q[1] == 1);
  CHECK(q[2] == 1);
  CHECK_THROWS_AS(series_div(b, a), ArithmeticError);
}

TEST_CASE("series sqrt of 1 - 4z gives central binomials") {
  const Series s = series_sqrt(Series::from_ints({1, -4}, 20));
  // (1 - sqrt(1-4z)) / (2z) = Catalan
  for (long n = 1; n < 20; ++n) {
    const Rat cat = -s[static_cast<std::size_t>(n)] / 2;
    CHECK(cat == Rat(binom(2 * (n - 1), n - 1)) / n);
  }
  CHECK_THROWS_AS(series_sqrt(Series::from_ints({2, 1}, 4)), ArithmeticError);
}

TEST_CASE("first difference") {
  const Series a = Series::from_ints({1, 2, 3, 4}, 4);
  const Series b = Series::from_ints({1, 2, 5, 4}, 4);
  CHECK(first_difference(a, a) == -1);
  CHECK(first_difference(a, b) == 2);
}

TEST_CASE("newton root of the Catalan equation") {
  // 1 - u + z u^2 = 0
  const std::size_t N = 30;
  const UPoly K = UPoly::from_z_slices({P({1, -1}), P({0, 0, 1})}, N);
  const Series u = newton_series_root(K, 1, N);
  for (long n = 0; n < static_cast<long>(N); ++n) CHECK(u[static_cast<std::size_t>(n)] == Rat(binom(2 * n, n)) / (n + 1));
  CHECK_THROWS_AS(newton_series_root(K, 3, N), ArithmeticError);
}

TEST_CASE("hensel small factor") {
  const std::size_t N = 16;
  SUBCASE("b = 0") {
    const UPoly K = UPoly::from_z_slices({P({2, -3, 1}), P({1, 0, 0, 1})}, N);
    const auto h = hensel_small_factor(K, 0, N);
    CHECK(h.small.degree_u() == 1);
    CHECK(h.small.z_slice(0) == P({-1, 1}));
    const UPoly diff = K - h.small * h.cofactor;
    for (std::size_t n = 0; n < N; ++n) CHECK(diff.z_slice(n).is_zero());
    // the small root agrees with Newton from u = 1
    const Series root = newton_series_root(K, 1, N);
    CHECK(-h.small.coeff(0) == root);
  }
  SUBCASE("b = 1") {
    // u(u-1)(u+2) + z (1 + u^4)
    const UPoly K = UPoly::from_z_slices({P({0, -2, 1, 1}), P({1, 0, 0, 0, 1})}, N);
    const auto h = hensel_small_factor(K, 1, N);
    CHECK(h.small.degree_u() == 2);
    CHECK(h.small.z_slice(0) == P({0, -1, 1}));
    const UPoly diff = K - h.small * h.cofactor;
    for (std::size_t n = 0; n < N; ++n) CHECK(diff.z_slice(n).is_zero());
  }
  SUBCASE("not divisible") {
    const UPoly K = UPoly::from_z_slices({P({2, 1}), P({1})}, N);
    CHECK_THROWS_AS(hensel_small_factor(K, 0, N), ArithmeticError);
  }
}

TEST_CASE("linear algebra") {
  CHECK(determinant({{2, 1}, {1, 3}}) == 5);
  CHECK(determinant({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  auto x = solve_linear({{2, 1}, {1, 3}}, {3, 5});
  REQUIRE(x);
  CHECK((*x)[0] == Rat(4, 5));
  CHECK((*x)[1] == Rat(7, 5));
  CHECK_FALSE(solve_linear({{1, 2}, {2, 4}}, {1, 2}));
  const auto ns = nullspace({{1, 1, 1}}, 3);
  CHECK(ns.size() == 2);
  const Poly p = interpolate({0, 1, 2}, {1, 2, 5});
  CHECK(p == P({1, 0, 1}));
}

TEST_CASE("rational functions") {
  const auto f = RationalFunction::reduced(P({2, -2}), P({2, -4, 2}));
  CHECK(f.num == P({1}));
  CHECK(f.den == P({1, -1}));
  const auto fib = RationalFunction::reduced(P({1}), P({1, -1, -1}));
  const Series s = fib.expand(10);
  CHECK(s[9] == 55);
  CHECK_THROWS_AS(RationalFunction::reduced(P({1}), P({0, 1})), ArithmeticError);
}

TEST_CASE("laurent polynomials") {
  LaurentU a;
  a.add(-1, 1);
  a.add(1, 1);
  const LaurentU sq = a * a;
  CHECK(sq[-2] == 1);
  CHECK(sq[0] == 2);
  CHECK(sq[2] == 1);
  CHECK(sq.min_exponent() == -2);
  CHECK((sq - sq).empty());
}
