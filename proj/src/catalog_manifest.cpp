// Golden data for the built-in systems. `printed` holds the terms as they
// were published; `golden` extends them with brute-force tree enumeration.

#include <sstream>

#include "ecogen/catalog.hpp"

namespace ecogen {

namespace {

std::vector<BigInt> seq(const char* csv) {
  std::vector<BigInt> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.emplace_back(tok);
  return out;
}

RationalFunction rat(Poly num, Poly den) { return RationalFunction::reduced(num, den); }

// (1 - mz - sqrt(1 - 2mz + (m-2)^2 z^2)) / (2(m-1) z^2)
SurdForm generalized_rule(long m) {
  return {Poly{1, -m}, Poly{1}, Poly{1, -2 * m, (m - 2) * (m - 2)}, Poly{0, 0, 2 * (m - 1)}};
}

// F = (1 + zF)^m
AlgebraicGuess m_ary(int m) {
  AlgebraicGuess q;
  q.dz = m;
  q.dF = m;
  q.coeffs.assign(static_cast<std::size_t>(m) + 1, std::vector<BigInt>(static_cast<std::size_t>(m) + 1));
  BigInt c = 1;
  for (int j = 0; j <= m; ++j) {
    q.coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = c;
    c = c * (m - j) / (j + 1);
  }
  q.coeffs[0][1] -= 1;
  return q;
}

// G = zF with G(1 + G) = z(1 + 2G + G^2 + G^3), divided by z.
AlgebraicGuess modified_motzkin_relation() {
  AlgebraicGuess q;
  q.dz = 3;
  q.dF = 3;
  q.coeffs.assign(4, std::vector<BigInt>(4));
  q.coeffs[0][0] = -1;
  q.coeffs[0][1] = 1;
  q.coeffs[1][1] = -2;
  q.coeffs[1][2] = 1;
  q.coeffs[2][2] = -1;
  q.coeffs[3][3] = -1;
  return q;
}

// (1-z)^2 h / ((1-2z)(1-z)^2 h - z^4), h = sum_{p>=1} z^(2^p)
Series fredholm_series(std::size_t order) {
  const std::size_t m = order + 2;
  std::vector<Rat> hc(m);
  for (std::size_t p = 2; p < m; p *= 2) hc[p] = 1;
  const Series h(std::move(hc));
  const Series sq = Series::from_poly(Poly{1, -2, 1}, m);
  const Series num = sq * h;
  const Series den = Series::from_poly(Poly{1, -2}, m) * num - Series::from_poly(Poly::monomial(1, 4), m);
  return series_div(num, den).truncated(order);
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> c;
  auto add = [&](CatalogEntry e) { c.push_back(std::move(e)); };

  add({.name = "fibonacci",
       .title = "Fibonacci numbers",
       .seq_id = "M0692",
       .spec = "system fibonacci { mode eco; axiom 1; rule k mod 2 == 1 : (k) x k-1, (2) x 1; "
               "rule k mod 2 == 0 : (k) x k-1, (1) x 1; }",
       .printed = seq("1,1,2,3,5"),
       .golden = seq("1,1,2,3,5,8,13,21,34,55,89,144,233,377"),
       .closed_form = rat(Poly{1}, Poly{1, -1, -1}),
       .oracle = "fibonacci"});
  add({.name = "fibonacci_even",
       .title = "Fibonacci numbers of odd index",
       .seq_id = "M1439",
       .spec = "system fibonacci_even { mode eco; axiom 2; rule always : (2) x k-1, (k+1) x 1; }",
       .printed = seq("1,2,5"),
       .golden = seq("1,2,5,13,34,89,233,610,1597,4181,10946,28657,75025,196418"),
       .closed_form = rat(Poly{1, -1}, Poly{1, -3, 1}),
       .oracle = "fibonacci_bisection_odd"});
  add({.name = "fibonacci_odd",
       .title = "Fibonacci numbers of even index",
       .seq_id = "M2741",
       .spec = "system fibonacci_odd { mode eco; axiom 3; rule always : (2) x k-1, (k+1) x 1; }",
       .golden = seq("1,3,8,21,55,144,377,987,2584,6765,17711,46368,121393,317811"),
       .closed_form = rat(Poly{1}, Poly{1, -3, 1}),
       .oracle = "fibonacci_bisection_even"});
  add({.name = "sigma_double",
       .title = "(k) -> (1)^(k-1) (2k)",
       .spec = "system sigma_double { mode eco; axiom 2; rule always : (1) x k-1, (2*k) x 1; }",
       .golden = seq("1,2,5,13,34,89,233,610,1597,4181,10946,28657,75025,196418"),
       .closed_form = rat(Poly{1, -1}, Poly{1, -3, 1}),
       .oracle = "fibonacci_bisection_odd"});
  add({.name = "sigma_parity",
       .title = "(k) -> (2)^(k-2) (3 - k mod 2) (k + k mod 2)",
       .spec = "system sigma_parity { mode eco; axiom 2; rule k mod 2 == 0 : (2) x k-2, (3) x 1, (k) x 1; "
               "rule k mod 2 == 1 : (2) x k-1, (k+1) x 1; }",
       .golden = seq("1,2,5,13,34,89,233,610,1597,4181,10946,28657,75025,196418"),
       .closed_form = rat(Poly{1, -1}, Poly{1, -3, 1}),
       .oracle = "fibonacci_bisection_odd"});
  add({.name = "sigma_prime",
       .title = "(k) -> (2)^(k-2) (3 - [k prime]) (k + [k prime])",
       .spec = "system sigma_prime { mode eco; axiom 2; rule k<=1 : (2) x 1; rule prime(k) : (2) x k-1, (k+1) x 1; "
               "rule !prime(k) & k>=2 : (2) x k-2, (3) x 1, (k) x 1; }",
       .golden = seq("1,2,5,13,34,89,233,610,1597,4181,10946,28657,75025,196418"),
       .closed_form = rat(Poly{1, -1}, Poly{1, -3, 1}),
       .oracle = "fibonacci_bisection_odd"});
  add({.name = "three_plus_fixed",
       .title = "(k) -> (3)^(k-3) (k+1) (k+2) (k+9)",
       .spec = "system three_plus_fixed { mode eco; axiom 3; rule k<=2 : (3) x k; rule k>=3 : (3) x k-3, (k+1) x 1, (k+2) x 1, (k+9) x 1; }",
       .golden = seq("1,3,21,135,873,5643,36477,235791,1524177,9852435,63687141,411680151,2661142329,17201894427"),
       .closed_form = rat(Poly{1, -3}, Poly{1, -6, -3})});
  add({.name = "three_plus_linear",
       .title = "(k) -> (3)^(k-1) (3k+6)",
       .spec = "system three_plus_linear { mode eco; axiom 3; rule always : (3) x k-1, (3*k+6) x 1; }",
       .golden = seq("1,3,21,135,873,5643,36477,235791,1524177,9852435,63687141,411680151,2661142329,17201894427"),
       .closed_form = rat(Poly{1, -3}, Poly{1, -6, -3})});
  add({.name = "parity_odd_three",
       .title = "(k) -> (2)^(k-2) (2 + k mod 2) (k+1)",
       .spec = "system parity_odd_three { mode eco; axiom 2; rule k<=1 : (2) x 1; rule k mod 2 == 0 : (2) x k-1, (k+1) x 1; "
               "rule k mod 2 == 1 & k>=3 : (2) x k-2, (3) x 1, (k+1) x 1; }",
       .golden = seq("1,2,5,14,39,108,299,828,2293,6350,17585,48698,134859,373464"),
       .closed_form = rat(Poly{1, -1}, Poly{1, -3, 1, -1})});
  add({.name = "parity_even_three",
       .title = "(k) -> (2)^(k-2) (3 - k mod 2) (k+1)",
       .spec = "system parity_even_three { mode eco; axiom 2; rule k mod 2 == 0 : (2) x k-2, (3) x 1, (k+1) x 1; "
               "rule k mod 2 == 1 : (2) x k-1, (k+1) x 1; }",
       .golden = seq("1,2,6,16,48,132,388,1084,3148,8876,25596,72556,208380,592524"),
       .closed_form = rat(Poly{1, 1, -2}, Poly{1, -1, -6, 2})});
  add({.name = "fredholm",
       .title = "(k) -> (2)^(k-2) (3 - [k power of 2]) (k+1)",
       .spec = "system fredholm { mode eco; axiom 2; rule pow2(k) : (2) x k-1, (k+1) x 1; "
               "rule !pow2(k) : (2) x k-2, (3) x 1, (k+1) x 1; }",
       .printed = seq("1,2,5,14,39,108"),
       .golden = seq("1,2,5,14,39,108,300,834,2316,6430,17856,49588,137705,382402"),
       .closed_form = SeriesForm{"(1 - z)^2*h/((1 - 2*z)*(1 - z)^2*h - z^4), h = sum_{p>=1} z^(2^p)", fredholm_series}});
  add({.name = "goldbach",
       .title = "(p_n) -> (p_{n+1}) (q_n) (r_n) (2)^(p_n - 3)",
       .spec = "system goldbach { mode eco; axiom 2; rule k<=1 : (2) x 1; rule k>=2 & k<=2 : (3) x 1, (2) x 1; "
               "rule prime(k) & k>=3 : (next_prime(k)) x 1, (goldbach_low(k)) x 1, (goldbach_high(k)) x 1, (2) x k-3; "
               "rule !prime(k) & k>=4 : (2) x k-1, (2*k-1) x 1; }",
       .golden = seq("1,2,5,14,41,122,365,1094,3281,9842,29525,88574,265721,797162"),
       .closed_form = rat(Poly{1, -2}, Poly{1, -4, 3}),
       .oracle = "goldbach"});
  add({.name = "catalan",
       .title = "Catalan numbers",
       .seq_id = "M1459",
       .spec = "system catalan { mode eco; axiom 2; rule always : interval(2, k+1); }",
       .printed = seq("1,2,5,14,42"),
       .golden = seq("1,2,5,14,42,132,429,1430,4862,16796,58786,208012,742900,2674440"),
       .closed_form = generalized_rule(2),
       .closed_form_order = 30,
       .oracle = "m_catalan_2",
       .kernel = true});
  add({.name = "motzkin",
       .title = "Motzkin numbers",
       .seq_id = "M1184",
       .spec = "system motzkin { mode eco; axiom 1; rule always : interval(1, k-1), (k+1) x 1; }",
       .printed = seq("1,1,2,4,9,21"),
       .golden = seq("1,1,2,4,9,21,51,127,323,835,2188,5798,15511,41835"),
       .closed_form = SurdForm{Poly{1, -1}, Poly{1}, Poly{1, -2, -3}, Poly{0, 0, 2}},
       .closed_form_order = 30,
       .oracle = "motzkin",
       .kernel = true});
  add({.name = "schroder",
       .title = "Schroder numbers",
       .seq_id = "M2898",
       .spec = "system schroder { mode eco; axiom 3; rule k<=2 : (3) x k; rule k>=3 : interval(3, k), (k+1) x 2; }",
       .printed = seq("1,3,11,45,197"),
       .golden = seq("1,3,11,45,197,903,4279,20793,103049,518859,2646723,13648869,71039373,372693519"),
       .closed_form = generalized_rule(3),
       .closed_form_order = 30,
       .kernel = true});
  add({.name = "rule4",
       .title = "(k) -> (4)...(k) (k+1)^3",
       .seq_id = "M3556",
       .spec = "system rule4 { mode eco; axiom 4; rule k<=3 : (4) x k; rule k>=4 : interval(4, k), (k+1) x 3; }",
       .golden = seq("1,4,19,100,562,3304,20071,124996,793774,5120632,33463102,221060008,1473830308,9904186192"),
       .closed_form = generalized_rule(4),
       .closed_form_order = 30,
       .kernel = true});
  add({.name = "rule5",
       .title = "(k) -> (5)...(k) (k+1)^4",
       .spec = "system rule5 { mode eco; axiom 5; rule k<=4 : (5) x k; rule k>=5 : interval(5, k), (k+1) x 4; }",
       .golden = seq("1,5,29,185,1257,8925,65445,491825,3768209,29324405,231153133,1841801065,14810069497,120029657805"),
       .closed_form = generalized_rule(5),
       .closed_form_order = 30,
       .kernel = true});
  add({.name = "ternary",
       .title = "Ternary trees",
       .seq_id = "M2926",
       .spec = "system ternary { mode eco; axiom 3; rule always : interval(3, k+2); }",
       .golden = seq("1,3,12,55,273,1428,7752,43263,246675,1430715,8414640,50067108,300830572,1822766520"),
       .closed_form = m_ary(3),
       .closed_form_order = 30,
       .oracle = "m_catalan_3",
       .kernel = true});
  add({.name = "quaternary",
       .title = "Dissections of a polygon",
       .seq_id = "M3587",
       .spec = "system quaternary { mode eco; axiom 4; rule always : interval(4, k+3); }",
       .golden = seq("1,4,22,140,969,7084,53820,420732,3362260,27343888,225568798,1882933364,15875338990,134993766600"),
       .closed_form = m_ary(4),
       .closed_form_order = 30,
       .oracle = "m_catalan_4",
       .kernel = true});
  add({.name = "quinary",
       .title = "5-ary trees",
       .spec = "system quinary { mode eco; axiom 5; rule always : interval(5, k+4); }",
       .golden = seq("1,5,35,285,2530,23751,231880,2330445,23950355,250543370,2658968130,28558343775,309831575760,"
                     "3390416787880"),
       .closed_form = m_ary(5),
       .closed_form_order = 30,
       .oracle = "m_catalan_5",
       .kernel = true});
  add({.name = "modified_motzkin",
       .title = "(k) -> (0)...(k-2) (k+1)",
       .spec = "system modified_motzkin { mode walk; axiom 0; rule always : interval(0, k-2), (k+1) x 1; }",
       .golden = seq("1,1,1,2,4,7,14,30,62,131,287,629,1385,3096"),
       .closed_form = modified_motzkin_relation(),
       .closed_form_order = 40,
       .kernel = true});
  add({.name = "excluded_one",
       .title = "(k) -> (0)(2)(3)...(k-1) (k+1)",
       .spec = "system excluded_one { mode walk; axiom 0; rule always : interval(0, k-1, minus {1}), (k+1) x 1; }",
       .printed = seq("1,1,2,3,6,12"),
       .golden = seq("1,1,2,3,6,12,26,59,139,338,842,2140,5528,14474"),
       .closed_form = SurdForm{Poly{3, 0, -3, -2}, Poly{1, 1}, Poly{1, -2, -3}, Poly{2, -2, -2, 2, 2}},
       .closed_form_order = 30,
       .symbolic_out_of_scope = true});
  add({.name = "excluded_two",
       .title = "(k) -> (0)(1)(3)(4)...(k-3)(k-1) (k+1)",
       .spec = "system excluded_two { mode walk; axiom 0; rule always : interval(0, k-1, minus {2, k-2}), (k+1) x 1; }",
       .printed = seq("1,1,2,3,6,11,23,47,101"),
       .golden = seq("1,1,2,3,6,11,23,47,101,221,490,1123,2565,6066"),
       .symbolic_out_of_scope = true});
  add({.name = "permutations",
       .title = "Permutations",
       .seq_id = "M1675",
       .spec = "system permutations { mode eco; axiom 1; rule always : (k+1) x k; }",
       .printed = seq("1,1,2,6,24"),
       .golden = seq("1,1,2,6,24,120,720,5040,40320,362880,3628800,39916800,479001600,6227020800"),
       .oracle = "factorial"});
  add({.name = "arrangements",
       .title = "Arrangements",
       .seq_id = "M1497",
       .spec = "system arrangements { mode eco; axiom 2; rule always : (k) x 1, (k+1) x k-1; }",
       .printed = seq("1,2,5,16,65,326"),
       .golden = seq("1,2,5,16,65,326,1957,13700,109601,986410,9864101,108505112,1302061345,16926797486"),
       .oracle = "arrangements"});
  add({.name = "involutions",
       .title = "Involutions",
       .seq_id = "M1221",
       .spec = "system involutions { mode eco; axiom 1; rule always : (k-1) x k-1, (k+1) x 1; }",
       .printed = seq("1,1,2,4,10,26,76"),
       .golden = seq("1,1,2,4,10,26,76,232,764,2620,9496,35696,140152,568504"),
       .oracle = "involutions"});
  add({.name = "partial_permutations",
       .title = "Partial permutations",
       .seq_id = "M1795",
       .spec = "system partial_permutations { mode eco; axiom 2; rule always : (k+1) x k-1, (k+2) x 1; }",
       .printed = seq("1,2,7,34,209"),
       .golden = seq("1,2,7,34,209,1546,13327,130922,1441729,17572114,234662231,3405357682,53334454417,896324308634"),
       .oracle = "partial_injections"});
  add({.name = "switchboard",
       .title = "Switchboard problem",
       .seq_id = "M1461",
       .spec = "system switchboard { mode eco; axiom 2; rule k<=1 : (2) x 1; rule k>=2 : (k-1) x k-2, (k) x 1, (k+1) x 1; }",
       .golden = seq("1,2,5,14,43,142,499,1850,7193,29186,123109,538078,2430355,11317646"),
       .oracle = "switchboard"});
  add({.name = "bicolored_involutions",
       .title = "Bicolored involutions",
       .seq_id = "M1648",
       .spec = "system bicolored_involutions { mode eco; axiom 2; rule k<=1 : (2) x 1; rule k>=2 : (k-1) x k-2, (k+1) x 2; }",
       .golden = seq("1,2,6,20,76,312,1384,6512,32400,168992,921184,5222208,30710464,186753920"),
       .oracle = "bicolored_involutions"});
  add({.name = "bell",
       .title = "Bell numbers",
       .seq_id = "M1484",
       .spec = "system bell { mode eco; axiom 1; rule always : (k) x k-1, (k+1) x 1; }",
       .printed = seq("1,1,2,5,15,52,203"),
       .golden = seq("1,1,2,5,15,52,203,877,4140,21147,115975,678570,4213597,27644437"),
       .oracle = "bell"});
  add({.name = "bicolored_partitions",
       .title = "Bicolored partitions",
       .seq_id = "M1662",
       .spec = "system bicolored_partitions { mode eco; axiom 2; rule k<=1 : (2) x 1; rule k>=2 : (k) x k-2, (k+1) x 2; }",
       .golden = seq("1,2,6,22,94,454,2430,14214,89918,610182,4412798,33827974,273646526,2326980998"),
       .oracle = "bicolored_partitions"});
  add({.name = "bessel",
       .title = "Bessel numbers (excursions)",
       .seq_id = "M1462",
       .spec = "system bessel { mode eco; axiom 2; rule k<=1 : (2) x 1; rule k>=2 & k<=2 : (2) x 1, (3) x 1; "
               "rule k>=3 : (k-1) x 1, (k) x k-2, (k+1) x 1; }",
       .printed = seq("1,1,2,4,9"),
       .golden = seq("1,1,2,4,9,22,58,164,496,1601,5502,20075,77531"),
       .column = GoldenColumn::excursions});
  add({.name = "ceil_half",
       .title = "(k) -> (ceil(k/2))^(k-1) (k+1)",
       .spec = "system ceil_half { mode eco; axiom 1; rule always : (ceil_div(k,2)) x k-1, (k+1) x 1; }",
       .golden = seq("1,1,2,4,10,23,60,153,397,1037,2727,7214,19069,50519")});
  add({.name = "fake_factorial",
       .title = "(k) -> (2)(4)...(2k)",
       .spec = "system fake_factorial { mode eco; axiom 1; rule always : interval(2, 2*k, step 2); }",
       .golden = seq("1,1,2,6,26,166,1626,25510,664666,29559718,2290267226,314039061414")});
  add({.name = "two_three_shift",
       .title = "(k) -> (2)(3) (k+2)^(k-2)",
       .spec = "system two_three_shift { mode eco; axiom 2; rule k<=1 : (2) x 1; rule k>=2 : (2) x 1, (3) x 1, (k+2) x k-2; }",
       .golden = seq("1,2,5,15,56,277,1885,17250,200281,2796947,45301280,831110985")});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

std::vector<BigInt> bessel_b_prefix() { return seq("1,1,2,5,14,43,143"); }

}  // namespace ecogen
