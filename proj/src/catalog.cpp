#include <chrono>
#include <functional>
#include <future>
#include <map>

#include "ecogen/catalog.hpp"
#include "ecogen/contfrac.hpp"
#include "ecogen/engine.hpp"
#include "json.hpp"

namespace ecogen {

namespace {

using Terms = std::vector<BigInt>;

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Two-term recurrence a_n = p(n) a_{n-1} + q(n) a_{n-2}.
Terms linear2(std::size_t count, BigInt a0, BigInt a1, const std::function<BigInt(long)>& p,
              const std::function<BigInt(long)>& q) {
  Terms t{a0, a1};
  for (std::size_t n = 2; n < count; ++n) {
    const long ln = static_cast<long>(n);
    t.push_back(p(ln) * t[n - 1] + q(ln) * t[n - 2]);
  }
  t.resize(count);
  return t;
}

// Stirling numbers of the second kind, row n.
std::vector<BigInt> stirling_row(std::size_t n) {
  std::vector<BigInt> row{1};
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1);
    for (std::size_t k = 1; k <= i; ++k)
      next[k] = BigInt(static_cast<unsigned long>(k)) * (k < row.size() ? row[k] : BigInt(0)) + row[k - 1];
    row = std::move(next);
  }
  return row;
}

Terms m_catalan(unsigned long m, std::size_t count) {
  Terms t;
  for (unsigned long n = 1; n <= count; ++n) t.push_back(binomial(m * n, n) / ((m - 1) * n + 1));
  return t;
}

const std::map<std::string, std::function<Terms(std::size_t)>, std::less<>>& registry() {
  static const std::map<std::string, std::function<Terms(std::size_t)>, std::less<>> r = {
      {"fibonacci",
       [](std::size_t c) { return linear2(c, 1, 1, [](long) { return BigInt(1); }, [](long) { return BigInt(1); }); }},
      {"fibonacci_bisection_odd",
       [](std::size_t c) { return linear2(c, 1, 2, [](long) { return BigInt(3); }, [](long) { return BigInt(-1); }); }},
      {"fibonacci_bisection_even",
       [](std::size_t c) { return linear2(c, 1, 3, [](long) { return BigInt(3); }, [](long) { return BigInt(-1); }); }},
      {"goldbach",
       [](std::size_t c) {
         Terms t;
         BigInt p = 1;
         for (std::size_t n = 0; n < c; ++n, p *= 3) t.push_back((p + 1) / 2);
         return t;
       }},
      {"motzkin",
       [](std::size_t c) {
         // (n+2) M_n = (2n+1) M_{n-1} + 3(n-1) M_{n-2}
         Terms t{1, 1};
         for (std::size_t n = 2; n < c; ++n) {
           const long ln = static_cast<long>(n);
           t.push_back(((2 * ln + 1) * t[n - 1] + 3 * (ln - 1) * t[n - 2]) / (ln + 2));
         }
         t.resize(c);
         return t;
       }},
      {"m_catalan_2", [](std::size_t c) { return m_catalan(2, c); }},
      {"m_catalan_3", [](std::size_t c) { return m_catalan(3, c); }},
      {"m_catalan_4", [](std::size_t c) { return m_catalan(4, c); }},
      {"m_catalan_5", [](std::size_t c) { return m_catalan(5, c); }},
      {"factorial",
       [](std::size_t c) {
         Terms t;
         for (std::size_t n = 0; n < c; ++n) t.push_back(factorial(n));
         return t;
       }},
      {"arrangements",
       [](std::size_t c) {
         Terms t;
         for (std::size_t n = 0; n < c; ++n) {
           BigInt s = 0;
           for (std::size_t k = 0; k <= n; ++k) s += factorial(n) / factorial(k);
           t.push_back(s);
         }
         return t;
       }},
      {"involutions",
       [](std::size_t c) { return linear2(c, 1, 1, [](long) { return BigInt(1); }, [](long n) { return BigInt(n - 1); }); }},
      {"partial_injections",
       [](std::size_t c) {
         Terms t;
         for (std::size_t n = 0; n < c; ++n) {
           BigInt s = 0;
           for (std::size_t k = 0; k <= n; ++k) {
             const BigInt b = binomial(n, k);
             s += factorial(k) * b * b;
           }
           t.push_back(s);
         }
         return t;
       }},
      {"switchboard",
       [](std::size_t c) { return linear2(c, 1, 2, [](long) { return BigInt(2); }, [](long n) { return BigInt(n - 1); }); }},
      {"bicolored_involutions",
       [](std::size_t c) {
         return linear2(c, 1, 2, [](long) { return BigInt(2); }, [](long n) { return BigInt(2 * (n - 1)); });
       }},
      {"bell",
       [](std::size_t c) {
         Terms t;
         for (std::size_t n = 0; n < c; ++n) {
           BigInt s = 0;
           for (const auto& x : stirling_row(n)) s += x;
           t.push_back(s);
         }
         return t;
       }},
      {"bicolored_partitions",
       [](std::size_t c) {
         Terms t;
         for (std::size_t n = 0; n < c; ++n) {
           BigInt s = 0, w = 1;
           for (const auto& x : stirling_row(n)) {
             s += x * w;
             w *= 2;
           }
           t.push_back(s);
         }
         return t;
       }},
  };
  return r;
}

Series to_series(const Terms& t) { return Series::from_integers(std::span<const BigInt>(t)); }

Terms engine_column(const EcoSpec& spec, GoldenColumn col, std::size_t count) {
  const CountTable table = count_levels(spec, count - 1);
  Terms t;
  for (std::size_t n = 0; n < count; ++n) t.push_back(col == GoldenColumn::totals ? table.totals[n] : table.at(n, spec.axiom));
  return t;
}

std::string show(const Terms& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].get_str();
  return s;
}

EntryReport verify_entry(const CatalogEntry& e) {
  const auto start = std::chrono::steady_clock::now();
  EntryReport r;
  r.name = e.name;
  try {
    const EcoSpec spec = parse_spec(e.spec);
    require_valid(spec);

    const bool printed_is_prefix =
        e.printed.size() <= e.golden.size() && std::equal(e.printed.begin(), e.printed.end(), e.golden.begin());
    const std::size_t want = std::max(e.golden.size(), e.closed_form ? e.closed_form_order : std::size_t{0});
    const Terms engine = engine_column(spec, e.column, want);
    r.prefix_ok = printed_is_prefix && std::equal(e.golden.begin(), e.golden.end(), engine.begin());
    if (!r.prefix_ok)
      r.notes.push_back("golden " + show(e.golden) + " vs engine " +
                        show(Terms(engine.begin(), engine.begin() + static_cast<std::ptrdiff_t>(e.golden.size()))));

    if (e.closed_form) {
      const Series f = to_series(Terms(engine.begin(), engine.begin() + static_cast<std::ptrdiff_t>(e.closed_form_order)));
      const ClosedFormVerdict v = closed_form_check(*e.closed_form, f);
      r.closed_form_ok = v.match;
      if (!v.match) r.notes.push_back("closed form differs at index " + std::to_string(v.first_difference));
    }

    if (!e.oracle.empty()) {
      const Terms o = oracle_terms(e.oracle, e.golden.size());
      r.oracle_ok = o == Terms(engine.begin(), engine.begin() + static_cast<std::ptrdiff_t>(e.golden.size()));
      if (!*r.oracle_ok) r.notes.push_back("oracle " + e.oracle + " gives " + show(o));
    }

    if (e.kernel) {
      const auto form = factorial_form(spec);
      if (!form) {
        r.kernel_ok = false;
        r.notes.push_back("factorial form not detected");
      } else {
        const std::size_t n = 30;
        const GFResult g = kernel_gfs(build_kernel(*form, n), n);
        const Terms totals = engine_column(spec, GoldenColumn::totals, n);
        r.kernel_ok = first_difference(g.F1, to_series(totals)) < 0 && g.F1.order() == n && g.cofactor_agrees;
        if (!*r.kernel_ok) r.notes.push_back("kernel F(z,1) disagrees with the engine");
      }
    }

    if (e.symbolic_out_of_scope) {
      r.notes.push_back("engine-verified, symbolic out of scope");
      // Search for an algebraic equation of degree <= 4.
      const Terms long_series = engine_column(spec, GoldenColumn::totals, 100);
      for (int dF = 2; dF <= 4 && !r.guessed_equation; ++dF)
        for (int dz = 1; dz <= 14 && !r.guessed_equation; ++dz) {
          if (static_cast<std::size_t>((dz + 1) * (dF + 1)) + 20 > long_series.size()) break;
          if (auto q = guess_algebraic(to_series(long_series), dz, dF, 20)) r.guessed_equation = q->to_string() + " = 0";
        }
    }

    if (e.name == "fredholm") {
      const double ratio = fredholm_ratio(60);
      r.extra_ok = std::abs(ratio - kFredholmRadius) <= 0.01 * kFredholmRadius;
      r.notes.push_back("f60/f61 = " + std::to_string(ratio));
    } else if (e.name == "bessel") {
      const std::size_t n = 25;
      const Series cf = cf_excursions(BirthDeathRule::from_spec(spec), n);
      const Series column = to_series(engine_column(spec, GoldenColumn::excursions, n));
      // 1/(1 - z - z^2 B(z)) is determined by the printed B prefix through z^(|B|+1).
      const Terms b = bessel_b_prefix();
      const std::size_t m = b.size() + 2;
      const Series den = Series::from_poly(Poly{1, -1}, m) - to_series(b).shifted_up(2).truncated(m);
      const Series via_b = series_inverse(den);
      r.extra_ok = first_difference(cf, column) < 0 && first_difference(via_b, column) < 0;
      if (!*r.extra_ok) r.notes.push_back("continued fraction or B(z) relation disagrees with the engine");
    }
  } catch (const std::exception& ex) {
    r.prefix_ok = false;
    r.notes.push_back(std::string("error: ") + ex.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

const CatalogEntry* find_entry(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<BigInt> oracle_terms(std::string_view name, std::size_t count) {
  const auto& r = registry();
  auto it = r.find(name);
  if (it == r.end()) throw UsageError("unknown oracle '" + std::string(name) + "'");
  return it->second(count);
}

std::vector<std::string> oracle_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

bool EntryReport::pass() const {
  auto ok = [](const std::optional<bool>& b) { return !b || *b; };
  return prefix_ok && ok(closed_form_ok) && ok(oracle_ok) && ok(kernel_ok) && ok(extra_ok);
}

bool CatalogReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const EntryReport& e) { return e.pass(); });
}

CatalogReport catalog_verify(const std::vector<std::string>& names) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<const CatalogEntry*> chosen;
  if (names.empty()) {
    for (const auto& e : catalog()) chosen.push_back(&e);
  } else {
    for (const auto& n : names) {
      const CatalogEntry* e = find_entry(n);
      if (!e) throw UsageError("unknown system '" + n + "'");
      chosen.push_back(e);
    }
  }
  std::vector<std::future<EntryReport>> jobs;
  for (const auto* e : chosen) jobs.push_back(std::async(std::launch::async, verify_entry, std::cref(*e)));
  CatalogReport report;
  for (auto& j : jobs) report.entries.push_back(j.get());
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string catalog_report_text(const CatalogReport& r) {
  auto flag = [](const char* label, const std::optional<bool>& b) -> std::string {
    if (!b) return "";
    return std::string(" ") + label + (*b ? "=ok" : "=FAIL");
  };
  std::string s;
  for (const auto& e : r.entries) {
    s += std::string(e.pass() ? "PASS " : "FAIL ") + e.name + " prefix=" + (e.prefix_ok ? "ok" : "FAIL") +
         flag("closed_form", e.closed_form_ok) + flag("oracle", e.oracle_ok) + flag("kernel", e.kernel_ok) +
         flag("extra", e.extra_ok) + "\n";
    for (const auto& n : e.notes) s += "    " + n + "\n";
    if (e.guessed_equation) s += "    guessed: " + *e.guessed_equation + "\n";
  }
  std::size_t passed = 0;
  for (const auto& e : r.entries) passed += e.pass();
  s += std::to_string(passed) + "/" + std::to_string(r.entries.size()) + " entries pass\n";
  return s;
}

std::string catalog_report_json(const CatalogReport& r) {
  using nlohmann::json;
  json entries = json::array();
  auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  for (const auto& e : r.entries) {
    json j = {{"name", e.name},
              {"pass", e.pass()},
              {"prefix", e.prefix_ok},
              {"closed_form", opt(e.closed_form_ok)},
              {"oracle", opt(e.oracle_ok)},
              {"kernel", opt(e.kernel_ok)},
              {"extra", opt(e.extra_ok)},
              {"notes", e.notes}};
    if (e.guessed_equation) j["guessed_equation"] = *e.guessed_equation;
    entries.push_back(std::move(j));
  }
  return json{{"entries", std::move(entries)}, {"pass", r.pass()}}.dump(2) + "\n";
}

double fredholm_ratio(std::size_t n) {
  const CatalogEntry* e = find_entry("fredholm");
  const CountTable t = count_levels(parse_spec(e->spec), n + 1);
  mpq_class q(t.totals[n], t.totals[n + 1]);
  return q.get_d();
}

}  // namespace ecogen
