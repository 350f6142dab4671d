#pragma once

// Rewriting systems: label expressions, guards, production clauses, the
// textual DSL and its canonical JSON mirror.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ecogen/arith.hpp"

namespace ecogen {

using Label = std::int64_t;

enum class Builtin { ceil_div, next_prime, goldbach_low, goldbach_high, pow };

std::string_view builtin_name(Builtin fn);
std::optional<Builtin> builtin_from_name(std::string_view name);

/// A label (or multiplicity) as a function of the current label k: either
/// a*k + b or a call into the closed builtin registry.
class Expr {
 public:
  Expr() = default;
  static Expr affine(std::int64_t a, std::int64_t b);
  static Expr constant(std::int64_t c) { return affine(0, c); }
  static Expr call(Builtin fn, std::vector<Expr> args);

  bool is_affine() const { return !fn_.has_value(); }
  bool is_constant() const { return is_affine() && a_ == 0; }
  std::int64_t slope() const { return a_; }
  std::int64_t offset() const { return b_; }
  std::optional<Builtin> builtin() const { return fn_; }
  const std::vector<Expr>& args() const { return args_; }

  std::int64_t eval(std::int64_t k) const;
  std::string to_string() const;

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::optional<Builtin> fn_;
  std::vector<Expr> args_;
};

struct GuardAtom {
  enum class Kind { ge, le, mod_eq, pow2, prime };
  Kind kind = Kind::ge;
  bool negated = false;  // only meaningful for pow2 / prime
  std::int64_t c = 0;    // bound for ge / le
  std::int64_t m = 1;    // modulus for mod_eq
  std::int64_t r = 0;    // residue for mod_eq

  bool holds(std::int64_t k) const;
  std::string to_string() const;
  friend bool operator==(const GuardAtom&, const GuardAtom&) = default;
};

/// Conjunction of atoms; the empty conjunction is `always`.
struct Guard {
  std::vector<GuardAtom> atoms;

  bool holds(std::int64_t k) const;
  bool is_always() const { return atoms.empty(); }
  std::optional<std::int64_t> lower_bound() const;
  std::optional<std::int64_t> upper_bound() const;
  // Fixed residue of k modulo m, when some atom pins it.
  std::optional<std::int64_t> residue(std::int64_t m) const;
  // Only threshold and residue atoms: membership is eventually periodic.
  bool is_periodic() const;
  std::string to_string() const;
  friend bool operator==(const Guard&, const Guard&) = default;
};

/// `(label) x multiplicity`
struct Item {
  Expr label;
  Expr multiplicity;
  friend bool operator==(const Item&, const Item&) = default;
};

/// Labels lo, lo+step, ..., <= hi, each produced once, minus the excluded ones.
struct Interval {
  Expr lo;
  Expr hi;
  std::int64_t step = 1;
  std::vector<Expr> excluded;
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Production = std::variant<Item, Interval>;

struct Clause {
  Guard guard;
  std::vector<Production> productions;
  friend bool operator==(const Clause&, const Clause&) = default;
};

enum class Mode { eco, walk };

struct EcoSpec {
  std::string name;
  Mode mode = Mode::eco;
  std::int64_t axiom = 1;
  std::vector<Clause> clauses;
  friend bool operator==(const EcoSpec&, const EcoSpec&) = default;
};

/// One transition group out of a label: `count` parallel edges to `label`.
/// Interval members appear with count 1, in ascending order.
struct Transition {
  Label label;
  std::int64_t count;
};

// ---- primality helpers used by the builtin registry
bool is_prime(std::int64_t n);
std::int64_t next_prime(std::int64_t n);
std::pair<std::int64_t, std::int64_t> goldbach_pair(std::int64_t p);

// ---- parsing / printing
EcoSpec parse_spec(std::string_view text);
std::string to_text(const EcoSpec& spec);
std::string to_canonical_json(const EcoSpec& spec);
EcoSpec from_canonical_json(std::string_view json);

// ---- rule expansion
const Clause* matching_clause(const EcoSpec& spec, std::int64_t k);  // nullptr when none
std::size_t matching_clause_count(const EcoSpec& spec, std::int64_t k);
// Transitions in production order; throws ValidationError when no clause matches.
std::vector<Transition> expand(const EcoSpec& spec, std::int64_t k);
// The successor multiset as label -> multiplicity.
std::map<Label, std::int64_t> successors(const EcoSpec& spec, std::int64_t k);
std::int64_t successor_count(const EcoSpec& spec, std::int64_t k);

// ---- validation
struct ValidationIssue {
  enum class Kind { arity, nonpositive_label, negative_label, negative_multiplicity, guard_gap, guard_overlap, bad_axiom, builtin_domain };
  Kind kind;
  std::int64_t k;
  std::string message;
};

std::string_view issue_kind_name(ValidationIssue::Kind kind);

/// Symbolic successor count of one clause as a rational affine function of k,
/// valid for all sufficiently large k in the clause's guard.
struct ClauseCount {
  std::size_t clause;
  bool symbolic = false;  // false when a builtin or non-divisible step blocks it
  Rat slope;
  Rat offset;
  bool matches_arity = false;  // slope 1, offset 0
};

struct ValidationReport {
  bool valid = true;
  std::vector<ValidationIssue> issues;
  std::vector<ClauseCount> clause_counts;
  std::optional<std::int64_t> first_violation;
  std::size_t labels_checked = 0;
};

ValidationReport validate_spec(const EcoSpec& spec, std::int64_t kprobe = 200);
// Throws ValidationError with the first issue when the spec is not valid.
void require_valid(const EcoSpec& spec, std::int64_t kprobe = 200);

// Labels reachable from the axiom, stopping at labels above `label_cap`
// (those are recorded but not expanded) or after `max_labels` distinct labels.
struct Reachable {
  std::vector<Label> labels;  // sorted
  bool truncated = false;
};
Reachable reachable_within(const EcoSpec& spec, Label label_cap, std::size_t max_labels);

}  // namespace ecogen
