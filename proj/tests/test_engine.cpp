#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ecogen/catalog.hpp"
#include "ecogen/engine.hpp"

using namespace ecogen;

namespace {

const char* kCatalan = "system catalan { mode eco; axiom 2; rule always : interval(2, k+1); }";
const char* kMotzkin = "system motzkin { mode eco; axiom 1; rule k<=1 : (2) x 1; rule k>=2 : interval(1, k-2), (k) x 1, (k+1) x 1; }";
const char* kCeilHalf = "system ceil_half { mode eco; axiom 1; rule always : (ceil_div(k,2)) x k-1, (k+1) x 1; }";

BigInt catalan(long n) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
  return r / (n + 1);
}

// Brute-force walk enumeration straight from the successor lists.
BigInt brute_walks(const EcoSpec& s, Label k, int n) {
  if (n == 0) return 1;
  BigInt total = 0;
  for (const auto& [l, m] : successors(s, k)) total += m * brute_walks(s, l, n - 1);
  return total;
}

}  // namespace

TEST_CASE("Catalan totals match the binomial formula") {
  const auto t = count_levels(parse_spec(kCatalan), 60);
  REQUIRE(t.totals.size() == 61);
  for (long n = 0; n <= 60; ++n) CHECK(t.totals[static_cast<std::size_t>(n)] == catalan(n + 1));
  CHECK(t.depth() == 60);
}

TEST_CASE("totals and label sums") {
  const EcoSpec s = parse_spec(kCatalan);
  const auto t = count_levels(s, 12);
  for (std::size_t n = 0; n <= 12; ++n) {
    BigInt total = 0, sum = 0;
    t.levels[n].for_each([&](Label k, const BigInt& c) {
      total += c;
      sum += k * c;
    });
    CHECK(total == t.totals[n]);
    CHECK(sum == t.sums[n]);
    // ECO arity: the label sum is the next level's size
    if (n < 12) CHECK(sum == t.totals[n + 1]);
  }
}

TEST_CASE("naive and range propagation agree") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const EcoSpec s = parse_spec(e.spec);
    const std::size_t n = e.name == "fake_factorial" || e.name == "two_three_shift" ? 9 : 25;
    CountOptions naive;
    naive.naive = true;
    const auto a = count_levels(s, n);
    const auto b = count_levels(s, n, naive);
    CHECK(a.totals == b.totals);
    for (std::size_t i = 0; i <= n; i += 4) {
      a.levels[i].for_each([&](Label k, const BigInt& c) { CHECK(b.at(i, k) == c); });
    }
  }
}

TEST_CASE("engine matches brute-force walk counting") {
  for (const char* text : {kCatalan, kMotzkin, kCeilHalf}) {
    const EcoSpec s = parse_spec(text);
    const auto t = count_levels(s, 9);
    for (int n = 0; n <= 9; ++n) CHECK(t.totals[static_cast<std::size_t>(n)] == brute_walks(s, s.axiom, n));
  }
}

TEST_CASE("level storage") {
  const auto d = LevelMap::from_dense(5, {1, 0, 3});
  CHECK(d.at(5) == 1);
  CHECK(d.at(6) == 0);
  CHECK(d.at(7) == 3);
  CHECK(d.at(100) == 0);
  CHECK(d.nonzero() == 2);
  CHECK(d.min_label() == 5);
  CHECK(d.max_label() == 7);
  const auto sp = LevelMap::from_sorted({{2, 4}, {1000, 1}});
  CHECK(sp.at(1000) == 1);
  CHECK_FALSE(sp.is_dense());
  CHECK_FALSE(LevelMap{}.min_label());
}

TEST_CASE("label cap") {
  CountOptions o;
  o.cap = 20;
  CHECK_THROWS_AS(count_levels(parse_spec(kCatalan), 30, o), ResourceLimitError);
  CHECK_NOTHROW(count_levels(parse_spec(kCatalan), 15, o));
}

TEST_CASE("series and columns") {
  const EcoSpec s = parse_spec(kCatalan);
  const Series F = series_F(s, 10);
  CHECK(F.order() == 10);
  CHECK(F[9] == catalan(10));
  const auto t = count_levels(s, 10);
  const Series c = column_series(t, 2);
  // walks returning to the axiom: f_{n,2} = C_n
  for (long n = 0; n <= 10; ++n) CHECK(c[static_cast<std::size_t>(n)] == catalan(n));
}

TEST_CASE("CSV and JSON output") {
  const auto t = count_levels(parse_spec(kCatalan), 2);
  CHECK(to_csv(t) == "n,k,count\n0,2,1\n1,2,1\n1,3,1\n2,2,2\n2,3,2\n2,4,1\n");
  const std::string j = totals_json(t);
  CHECK(j.find("\"totals\"") != std::string::npos);
  CHECK(j.find("\"5\"") != std::string::npos);
}

TEST_CASE("back table counts walks from every label") {
  const EcoSpec s = parse_spec(kMotzkin);
  const auto t = count_levels(s, 14);
  const auto bt = back_table(s, 14);
  CHECK(bt.depth() == 14);
  for (std::size_t m = 0; m <= 14; ++m) CHECK(bt.g(m, s.axiom) == t.totals[m]);
  CHECK(bt.g(5, 3) == brute_walks(s, 3, 5));
  CHECK(bt.contains(0, 15));
  CHECK_FALSE(bt.contains(14, 1000));
  CHECK_THROWS_AS(bt.g(14, 1000), std::out_of_range);
}

TEST_CASE("sampler") {
  const EcoSpec s = parse_spec(kMotzkin);
  SUBCASE("zero-length walk is the axiom") {
    const auto w = sample_walk(s, 0, 7, SampleStrategy::binary);
    CHECK(w.labels == std::vector<Label>{1});
    CHECK(w.transitions.empty());
  }
  SUBCASE("walks are valid") {
    for (auto strategy : {SampleStrategy::sequential, SampleStrategy::binary}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto w = sample_walk(s, 30, seed, strategy);
        REQUIRE(w.labels.size() == 31);
        CHECK(w.labels.front() == 1);
        for (std::size_t i = 0; i + 1 < w.labels.size(); ++i) CHECK(successors(s, w.labels[i]).count(w.labels[i + 1]) == 1);
      }
    }
  }
  SUBCASE("deterministic given the seed") {
    for (auto strategy : {SampleStrategy::sequential, SampleStrategy::binary}) {
      const auto a = sample_walk(s, 50, 42, strategy);
      const auto b = sample_walk(s, 50, 42, strategy);
      CHECK(a.labels == b.labels);
      CHECK(a.transitions == b.transitions);
    }
  }
  SUBCASE("sequential and binary search pick the same walk") {
    auto table = std::make_shared<const BackTable>(back_table(s, 25));
    Sampler a(s, table, 11), b(s, table, 11);
    for (int i = 0; i < 20; ++i) CHECK(a.draw(SampleStrategy::sequential).labels == b.draw(SampleStrategy::binary).labels);
    CHECK(b.cached_prefix_arrays() > 0);
  }
  SUBCASE("every walk is reachable") {
    // Catalan n=3: 14 walks, each should turn up among 2000 draws
    const EcoSpec c = parse_spec(kCatalan);
    auto table = std::make_shared<const BackTable>(back_table(c, 3));
    Sampler smp(c, table, 3);
    std::set<std::vector<std::int64_t>> seen;
    for (int i = 0; i < 2000; ++i) seen.insert(smp.draw(SampleStrategy::binary).transitions);
    CHECK(seen.size() == 14);
  }
}

TEST_CASE("antidiagonal stabilization") {
  const auto st = antidiagonal_stabilization(parse_spec(kCeilHalf), 31);
  // printed table for n <= 5
  const std::vector<std::vector<long>> rows{{1}, {1, 0}, {1, 0, 1}, {1, 0, 3, 0}, {1, 0, 3, 3, 3}, {1, 0, 3, 7, 9, 3}};
  for (std::size_t n = 0; n < rows.size(); ++n) {
    CAPTURE(n);
    REQUIRE(st.g[n].size() >= rows[n].size());
    for (std::size_t k = 0; k < rows[n].size(); ++k) CHECK(st.g[n][k] == rows[n][k]);
  }
  for (std::size_t k = 1; k <= 15; ++k) {
    CAPTURE(k);
    CHECK(st.settled_at[k] <= 2 * k - 1);
  }
}
