#include <string>

#include "doctest.h"
#include "ecogen/catalog.hpp"
#include "ecogen/classify.hpp"
#include "ecogen/engine.hpp"
#include "json.hpp"

using namespace ecogen;

namespace {

EcoSpec spec_of(const char* name) {
  const CatalogEntry* e = find_entry(name);
  REQUIRE(e != nullptr);
  return parse_spec(e->spec);
}

RationalFunction rf(std::initializer_list<long> num, std::initializer_list<long> den) {
  return RationalFunction::reduced(Poly(num), Poly(den));
}

}  // namespace

TEST_CASE("finite label sets") {
  const EcoSpec s = spec_of("fibonacci");
  const auto labels = reachable_labels(s, 64);
  CHECK(labels.finite);
  CHECK(labels.labels == std::vector<Label>{1, 2});
  const auto tm = transition_matrix(s, labels.labels);
  CHECK(tm.pi[0][0] == 0);
  CHECK(tm.pi[0][1] == 1);
  CHECK(tm.pi[1][0] == 1);
  CHECK(tm.pi[1][1] == 1);
  CHECK(rational_from_finite(s) == rf({1}, {1, -1, -1}));
  CHECK_FALSE(rational_from_finite(spec_of("catalan")));
  const auto rep = classify(s);
  CHECK(rep.closed_form() == rf({1}, {1, -1, -1}));
  CHECK(rep.mismatches.empty());
}

TEST_CASE("affine sigma") {
  for (const char* name : {"three_plus_fixed", "three_plus_linear"}) {
    CAPTURE(name);
    const EcoSpec s = spec_of(name);
    const auto w = affine_sigma(s);
    REQUIRE(w);
    CHECK(w->alpha == 6);
    CHECK(w->beta == 3);
    CHECK(rational_gf_affine(*w, s.axiom) == rf({1, -3}, {1, -6, -3}));
  }
  CHECK_FALSE(affine_sigma(spec_of("catalan")));
}

TEST_CASE("Goldbach system has f_n = (1 + 3^n)/2") {
  const EcoSpec s = spec_of("goldbach");
  const auto w = affine_sigma(s);
  REQUIRE(w);
  CHECK(w->alpha == 4);
  CHECK(w->beta == -3);
  const auto rep = classify(s);
  REQUIRE(rep.closed_form());
  const Series f = rep.closed_form()->expand(13);
  const auto engine = count_levels(s, 12).totals;
  BigInt p3 = 1;
  for (std::size_t n = 0; n <= 12; ++n, p3 *= 3) {
    CHECK(f[n] == (1 + p3) / 2);
    CHECK(engine[n] == (1 + p3) / 2);
  }
}

TEST_CASE("parity-affine") {
  const EcoSpec s = spec_of("parity_odd_three");
  const auto w = parity_affine(s);
  REQUIRE(w);
  CHECK(rational_gf_parity(*w) == rf({1, -1}, {1, -3, 1, -1}));
  CHECK(classify(s).parity_gf == rf({1, -1}, {1, -3, 1, -1}));
}

TEST_CASE("bounded plus linear") {
  const EcoSpec s = spec_of("parity_even_three");
  const auto b = bounded_linear_form(s);
  REQUIRE(b);
  CHECK(b->jumps == std::vector<std::int64_t>{1});
  CHECK(b->periodic_guards);
  const auto rep = classify(s);
  CHECK(rep.guessed_gf == rf({1, 1, -2}, {1, -1, -6, 2}));
  // power-of-two guards are not periodic: no guess is attempted
  const auto fr = classify(spec_of("fredholm"));
  CHECK_FALSE(fr.closed_form());
  CHECK(fr.mismatches.empty());
}

TEST_CASE("factorial walk forms") {
  SUBCASE("Catalan") {
    const auto w = factorial_form(spec_of("catalan"));
    REQUIRE(w);
    CHECK(w->A == std::vector<std::int64_t>{0, 1});
    CHECK(w->B.empty());
    CHECK(w->C.empty());
    CHECK(w->b == 0);
    CHECK(w->walk_axiom == 0);
    CHECK(w->real);
  }
  SUBCASE("Schroder") {
    const auto w = factorial_form(spec_of("schroder"));
    REQUIRE(w);
    CHECK(w->A == std::vector<std::int64_t>{0, 1, 1});
    CHECK(w->a == 1);
  }
  SUBCASE("modified Motzkin") {
    const auto w = factorial_form(spec_of("modified_motzkin"));
    REQUIRE(w);
    CHECK(w->B == std::vector<std::int64_t>{1});
    CHECK(w->b == 1);
    CHECK_FALSE(w->real);
    const auto succ = walk_successors(*w, 4);
    CHECK(succ.count(3) == 0);
    CHECK(succ.at(5) == 1);
  }
  SUBCASE("excluded landing") {
    const auto w = factorial_form(spec_of("excluded_one"));
    REQUIRE(w);
    CHECK(w->C == std::vector<std::int64_t>{1});
  }
  CHECK_FALSE(factorial_form(spec_of("fibonacci")));
  CHECK_FALSE(factorial_form(spec_of("permutations")));
}

TEST_CASE("radius zero and linear bounds") {
  const auto perm = radius_zero_check(spec_of("permutations"), 0);
  CHECK(perm.kind == RadiusZeroVerdict::Kind::holds);
  REQUIRE(perm.tail_slope);
  CHECK(*perm.tail_slope > 0);
  CHECK(radius_zero_check(spec_of("catalan"), 0).kind == RadiusZeroVerdict::Kind::inconclusive);
  CHECK(radius_zero_check(spec_of("ceil_half"), 0).kind == RadiusZeroVerdict::Kind::inconclusive);
  CHECK(verdict_name(RadiusZeroVerdict::Kind::holds) == "holds");

  const auto cat = linear_bound_check(spec_of("catalan"));
  CHECK(cat.bounded);
  CHECK(cat.slope == 1);
  CHECK(linear_bound_check(spec_of("schroder")).slope == 2);
  CHECK_FALSE(linear_bound_check(spec_of("fake_factorial")).bounded);
  CHECK_FALSE(linear_bound_check(spec_of("three_plus_linear")).bounded);
}

TEST_CASE("closed forms agree with the engine on the rational catalog entries") {
  for (const char* name : {"fibonacci", "fibonacci_even", "fibonacci_odd", "sigma_double", "sigma_parity", "three_plus_fixed", "three_plus_linear",
                           "parity_odd_three", "parity_even_three", "goldbach"}) {
    CAPTURE(name);
    const EcoSpec s = spec_of(name);
    const auto rep = classify(s);
    CHECK(rep.mismatches.empty());
    REQUIRE(rep.closed_form());
    const CatalogEntry* e = find_entry(name);
    REQUIRE(e->closed_form);
    CHECK(*rep.closed_form() == std::get<RationalFunction>(*e->closed_form));
  }
}

TEST_CASE("report JSON") {
  const auto j = nlohmann::json::parse(report_json(classify(spec_of("three_plus_linear"))));
  CHECK(j["system"] == "three_plus_linear");
  CHECK(j["closed_form"]["denominator"] == nlohmann::json({"1", "-6", "-3"}));
  CHECK(j["criteria"].is_array());
  // geometric labels: verification runs on a shorter prefix and says so
  CHECK(j["mismatches"].empty());
}

TEST_CASE("classify rejects invalid specs") {
  CHECK_THROWS_AS(classify(parse_spec("system a { mode eco; axiom 1; rule always : (k) x k, (1) x 1; }")), ValidationError);
}
