#include "doctest.h"
#include "ecogen/catalog.hpp"
#include "ecogen/contfrac.hpp"
#include "ecogen/engine.hpp"

using namespace ecogen;

namespace {

// Weighted Motzkin excursions by dynamic programming over heights.
std::vector<BigInt> excursions_dp(const BirthDeathRule& r, std::size_t order) {
  std::vector<BigInt> out;
  std::vector<BigInt> h{1};
  for (std::size_t n = 0; n < order; ++n) {
    out.push_back(h[0]);
    std::vector<BigInt> next(h.size() + 1);
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k] == 0) continue;
      const auto kk = static_cast<std::int64_t>(k);
      if (k > 0) next[k - 1] += r.a(kk) * h[k];
      next[k] += r.b(kk) * h[k];
      next[k + 1] += r.c(kk) * h[k];
    }
    h = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("constant rules") {
  SUBCASE("Motzkin") {
    const Series m = cf_excursions(BirthDeathRule::constant(1, 1, 1), 20);
    const auto dp = excursions_dp(BirthDeathRule::constant(1, 1, 1), 20);
    for (std::size_t n = 0; n < 20; ++n) CHECK(m[n] == dp[n]);
    CHECK(m[4] == 9);
  }
  SUBCASE("Dyck") {
    const Series d = cf_excursions(BirthDeathRule::constant(1, 0, 1), 20);
    const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
    for (std::size_t n = 0; n < 10; ++n) {
      CHECK(d[2 * n] == catalan[n]);
      CHECK(d[2 * n + 1] == 0);
    }
  }
  SUBCASE("no down steps") {
    const Series g = cf_excursions(BirthDeathRule::constant(0, 1, 1), 12);
    for (std::size_t n = 0; n < 12; ++n) CHECK(g[n] == 1);
  }
}

TEST_CASE("level-dependent weights") {
  BirthDeathRule r;
  r.a = [](std::int64_t k) { return k; };
  r.b = [](std::int64_t k) { return 2 * k + 1; };
  r.c = [](std::int64_t) { return 1; };
  const Series s = cf_excursions(r, 18);
  const auto dp = excursions_dp(r, 18);
  for (std::size_t n = 0; n < 18; ++n) CHECK(s[n] == dp[n]);
}

TEST_CASE("truncation depth") {
  const auto r = BirthDeathRule::constant(2, 1, 3);
  const Series full = cf_excursions(r, 16);
  CHECK(cf_excursions_depth(r, 16, 9) == full);
  CHECK(cf_excursions_depth(r, 16, 30) == full);
  // too shallow: walks reaching the floor are lost
  CHECK(first_difference(cf_excursions_depth(r, 16, 1), full) >= 0);
}

TEST_CASE("rules read from specs") {
  const EcoSpec bessel = parse_spec(find_entry("bessel")->spec);
  const auto r = BirthDeathRule::from_spec(bessel);
  CHECK(r.a(0) == 0);
  CHECK(r.b(0) == 1);
  CHECK(r.c(0) == 1);
  CHECK(r.a(3) == 1);
  CHECK(r.b(3) == 3);
  CHECK(r.c(3) == 1);
  const Series s = cf_excursions(r, 25);
  const auto t = count_levels(bessel, 24);
  CHECK(first_difference(s, column_series(t, bessel.axiom)) == -1);
  const auto dp = excursions_dp(r, 25);
  for (std::size_t n = 0; n < 25; ++n) CHECK(s[n] == dp[n]);

  const auto cat = BirthDeathRule::from_spec(parse_spec(find_entry("catalan")->spec));
  CHECK_THROWS_AS(cat.c(3), ValidationError);
}

TEST_CASE("Bessel excursions and the printed B prefix") {
  const EcoSpec bessel = parse_spec(find_entry("bessel")->spec);
  const Series f = cf_excursions(BirthDeathRule::from_spec(bessel), 25);
  const long printed[] = {1, 1, 2, 4, 9};
  for (std::size_t n = 0; n < 5; ++n) CHECK(f[n] == printed[n]);
  // F = 1/(1 - z - z^2 B): B is determined by F, its printed prefix must agree
  const auto b = bessel_b_prefix();
  const std::size_t m = b.size() + 2;
  const Series inv = series_inverse(f.truncated(m));
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(-inv[i + 2] == b[i]);
  CHECK(inv[0] == 1);
  CHECK(inv[1] == -1);
}
