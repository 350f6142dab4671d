#pragma once

// Built-in systems with golden prefixes, closed forms and integer oracles.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecogen/arith.hpp"
#include "ecogen/kernel.hpp"

namespace ecogen {

enum class GoldenColumn { totals, excursions };

struct CatalogEntry {
  std::string name;
  std::string title;
  std::string seq_id;  // inert sequence tag, e.g. M1459
  std::string spec;    // DSL text
  std::vector<BigInt> printed;  // prefix as published, possibly empty
  std::vector<BigInt> golden;   // printed prefix extended by brute force, >= 8 terms
  GoldenColumn column = GoldenColumn::totals;
  std::optional<ClosedForm> closed_form;
  std::size_t closed_form_order = 25;
  std::string oracle;  // name in the oracle registry, empty when none
  bool kernel = false;  // factorial walk eligible for the kernel method
  bool symbolic_out_of_scope = false;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(std::string_view name);

// Independent integer recurrences; throws UsageError on an unknown name.
std::vector<BigInt> oracle_terms(std::string_view name, std::size_t count);
std::vector<std::string> oracle_names();

// B(z) prefix printed alongside the Bessel excursions.
std::vector<BigInt> bessel_b_prefix();

struct EntryReport {
  std::string name;
  bool prefix_ok = false;
  std::optional<bool> closed_form_ok;
  std::optional<bool> oracle_ok;
  std::optional<bool> kernel_ok;
  std::optional<bool> extra_ok;  // entry-specific checks
  std::optional<std::string> guessed_equation;
  std::vector<std::string> notes;
  double seconds = 0;

  bool pass() const;
};

struct CatalogReport {
  std::vector<EntryReport> entries;
  double seconds = 0;
  bool pass() const;
};

// Empty `names` verifies every entry. Entries run concurrently; the report
// keeps catalog order.
CatalogReport catalog_verify(const std::vector<std::string>& names = {});
std::string catalog_report_text(const CatalogReport& r);
std::string catalog_report_json(const CatalogReport& r);

// f_n / f_{n+1} for the Fredholm system.
double fredholm_ratio(std::size_t n = 60);
inline constexpr double kFredholmRadius = 0.360102;

}  // namespace ecogen
