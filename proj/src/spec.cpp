#include "ecogen/spec.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace ecogen {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimitError("label arithmetic overflows 64 bits");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceLimitError("label arithmetic overflows 64 bits");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------- primes

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d <= n / d; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

std::int64_t next_prime(std::int64_t n) {
  std::int64_t p = std::max<std::int64_t>(n + 1, 2);
  while (!is_prime(p)) p = checked_add(p, 1);
  return p;
}

std::pair<std::int64_t, std::int64_t> goldbach_pair(std::int64_t p) {
  const std::int64_t target = 2 * p - next_prime(p) + 3;
  if (target < 4 || target % 2 != 0)
    throw ValidationError("goldbach decomposition undefined at k=" + std::to_string(p) + " (target " + std::to_string(target) + ")");
  for (std::int64_t q = 2; q <= target / 2; ++q)
    if (is_prime(q) && is_prime(target - q)) return {q, target - q};
  throw ValidationError("no prime pair sums to " + std::to_string(target));
}

// ---------------------------------------------------------------- Expr

std::string_view builtin_name(Builtin fn) {
  switch (fn) {
    case Builtin::ceil_div: return "ceil_div";
    case Builtin::next_prime: return "next_prime";
    case Builtin::goldbach_low: return "goldbach_low";
    case Builtin::goldbach_high: return "goldbach_high";
    case Builtin::pow: return "pow";
  }
  return "?";
}

std::optional<Builtin> builtin_from_name(std::string_view name) {
  for (Builtin fn : {Builtin::ceil_div, Builtin::next_prime, Builtin::goldbach_low, Builtin::goldbach_high, Builtin::pow})
    if (builtin_name(fn) == name) return fn;
  return std::nullopt;
}

Expr Expr::affine(std::int64_t a, std::int64_t b) {
  Expr e;
  e.a_ = a;
  e.b_ = b;
  return e;
}

Expr Expr::call(Builtin fn, std::vector<Expr> args) {
  Expr e;
  e.fn_ = fn;
  e.args_ = std::move(args);
  return e;
}

std::int64_t Expr::eval(std::int64_t k) const {
  if (!fn_) return checked_add(checked_mul(a_, k), b_);
  auto arg = [&](std::size_t i) { return args_.at(i).eval(k); };
  switch (*fn_) {
    case Builtin::ceil_div: {
      const std::int64_t m = arg(1);
      if (m <= 0) throw ValidationError("ceil_div needs a positive divisor");
      return -floor_div(-arg(0), m);
    }
    case Builtin::next_prime: return next_prime(arg(0));
    case Builtin::goldbach_low: return goldbach_pair(arg(0)).first;
    case Builtin::goldbach_high: return goldbach_pair(arg(0)).second;
    case Builtin::pow: {
      const std::int64_t base = arg(0);
      const std::int64_t e = arg(1);
      if (e < 0) throw ValidationError("pow with negative exponent");
      std::int64_t r = 1;
      for (std::int64_t i = 0; i < e; ++i) r = checked_mul(r, base);
      return r;
    }
  }
  return 0;
}

std::string Expr::to_string() const {
  if (fn_) {
    std::string s(builtin_name(*fn_));
    s += '(';
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) s += ", ";
      s += args_[i].to_string();
    }
    return s + ')';
  }
  if (a_ == 0) return std::to_string(b_);
  std::string s;
  if (a_ == 1)
    s = "k";
  else if (a_ == -1)
    s = "-k";
  else
    s = std::to_string(a_) + "*k";
  if (b_ > 0) s += "+" + std::to_string(b_);
  if (b_ < 0) s += std::to_string(b_);
  return s;
}

// ---------------------------------------------------------------- guards

bool GuardAtom::holds(std::int64_t k) const {
  switch (kind) {
    case Kind::ge: return k >= c;
    case Kind::le: return k <= c;
    case Kind::mod_eq: return floor_mod(k, m) == r;
    case Kind::pow2: return (k > 0 && (k & (k - 1)) == 0) != negated;
    case Kind::prime: return is_prime(k) != negated;
  }
  return false;
}

std::string GuardAtom::to_string() const {
  switch (kind) {
    case Kind::ge: return "k>=" + std::to_string(c);
    case Kind::le: return "k<=" + std::to_string(c);
    case Kind::mod_eq: return "k mod " + std::to_string(m) + " == " + std::to_string(r);
    case Kind::pow2: return std::string(negated ? "!" : "") + "pow2(k)";
    case Kind::prime: return std::string(negated ? "!" : "") + "prime(k)";
  }
  return "?";
}

bool Guard::holds(std::int64_t k) const {
  return std::all_of(atoms.begin(), atoms.end(), [k](const GuardAtom& a) { return a.holds(k); });
}

std::optional<std::int64_t> Guard::lower_bound() const {
  std::optional<std::int64_t> lb;
  for (const auto& a : atoms)
    if (a.kind == GuardAtom::Kind::ge) lb = lb ? std::max(*lb, a.c) : a.c;
  return lb;
}

std::optional<std::int64_t> Guard::upper_bound() const {
  std::optional<std::int64_t> ub;
  for (const auto& a : atoms)
    if (a.kind == GuardAtom::Kind::le) ub = ub ? std::min(*ub, a.c) : a.c;
  return ub;
}

std::optional<std::int64_t> Guard::residue(std::int64_t m) const {
  for (const auto& a : atoms)
    if (a.kind == GuardAtom::Kind::mod_eq && a.m % m == 0) return floor_mod(a.r, m);
  return std::nullopt;
}

bool Guard::is_periodic() const {
  return std::all_of(atoms.begin(), atoms.end(), [](const GuardAtom& a) {
    return a.kind == GuardAtom::Kind::ge || a.kind == GuardAtom::Kind::le || a.kind == GuardAtom::Kind::mod_eq;
  });
}

std::string Guard::to_string() const {
  if (atoms.empty()) return "always";
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += " & ";
    s += atoms[i].to_string();
  }
  return s;
}

// ---------------------------------------------------------------- expansion

const Clause* matching_clause(const EcoSpec& spec, std::int64_t k) {
  for (const auto& c : spec.clauses)
    if (c.guard.holds(k)) return &c;
  return nullptr;
}

std::size_t matching_clause_count(const EcoSpec& spec, std::int64_t k) {
  return static_cast<std::size_t>(
      std::count_if(spec.clauses.begin(), spec.clauses.end(), [k](const Clause& c) { return c.guard.holds(k); }));
}

std::vector<Transition> expand(const EcoSpec& spec, std::int64_t k) {
  const Clause* clause = matching_clause(spec, k);
  if (!clause) throw ValidationError("no clause matches k=" + std::to_string(k));
  std::vector<Transition> out;
  for (const auto& prod : clause->productions) {
    if (const auto* item = std::get_if<Item>(&prod)) {
      const std::int64_t mult = item->multiplicity.eval(k);
      if (mult < 0)
        throw ValidationError("negative multiplicity " + std::to_string(mult) + " at k=" + std::to_string(k));
      if (mult == 0) continue;
      out.push_back({item->label.eval(k), mult});
    } else {
      const auto& iv = std::get<Interval>(prod);
      const std::int64_t lo = iv.lo.eval(k);
      const std::int64_t hi = iv.hi.eval(k);
      std::set<std::int64_t> skip;
      for (const auto& e : iv.excluded) skip.insert(e.eval(k));
      for (std::int64_t l = lo; l <= hi; l += iv.step)
        if (!skip.contains(l)) out.push_back({l, 1});
    }
  }
  return out;
}

std::map<Label, std::int64_t> successors(const EcoSpec& spec, std::int64_t k) {
  std::map<Label, std::int64_t> out;
  for (const auto& t : expand(spec, k)) out[t.label] += t.count;
  return out;
}

std::int64_t successor_count(const EcoSpec& spec, std::int64_t k) {
  std::int64_t n = 0;
  for (const auto& t : expand(spec, k)) n += t.count;
  return n;
}

Reachable reachable_within(const EcoSpec& spec, Label label_cap, std::size_t max_labels) {
  std::set<Label> seen{spec.axiom};
  std::deque<Label> queue{spec.axiom};
  Reachable r;
  while (!queue.empty()) {
    const Label k = queue.front();
    queue.pop_front();
    if (k > label_cap) continue;
    if (!matching_clause(spec, k)) continue;
    for (const auto& t : expand(spec, k)) {
      if (seen.insert(t.label).second) {
        if (seen.size() > max_labels) {
          r.truncated = true;
          r.labels.assign(seen.begin(), seen.end());
          return r;
        }
        queue.push_back(t.label);
      }
    }
  }
  r.labels.assign(seen.begin(), seen.end());
  return r;
}

// ---------------------------------------------------------------- validation

std::string_view issue_kind_name(ValidationIssue::Kind kind) {
  switch (kind) {
    case ValidationIssue::Kind::arity: return "arity";
    case ValidationIssue::Kind::nonpositive_label: return "nonpositive_label";
    case ValidationIssue::Kind::negative_label: return "negative_label";
    case ValidationIssue::Kind::negative_multiplicity: return "negative_multiplicity";
    case ValidationIssue::Kind::guard_gap: return "guard_gap";
    case ValidationIssue::Kind::guard_overlap: return "guard_overlap";
    case ValidationIssue::Kind::bad_axiom: return "bad_axiom";
    case ValidationIssue::Kind::builtin_domain: return "builtin_domain";
  }
  return "?";
}

namespace {

ClauseCount symbolic_count(const Clause& clause, std::size_t index) {
  ClauseCount cc{index, true, Rat(0), Rat(0), false};
  // A large representative k of the guard's class, used to decide which
  // exclusions eventually fall inside their interval.
  std::int64_t probe = 1'000'000;
  while (!clause.guard.holds(probe) && probe < 1'000'000 + 10'000) ++probe;
  for (const auto& prod : clause.productions) {
    if (const auto* item = std::get_if<Item>(&prod)) {
      if (!item->multiplicity.is_affine()) {
        cc.symbolic = false;
        return cc;
      }
      cc.slope += item->multiplicity.slope();
      cc.offset += item->multiplicity.offset();
      continue;
    }
    const auto& iv = std::get<Interval>(prod);
    if (!iv.lo.is_affine() || !iv.hi.is_affine()) {
      cc.symbolic = false;
      return cc;
    }
    const std::int64_t da = iv.hi.slope() - iv.lo.slope();
    const std::int64_t db = iv.hi.offset() - iv.lo.offset();
    if (da < 0 || (da == 0 && db < 0)) continue;  // eventually empty
    if (da % iv.step != 0 || db % iv.step != 0) {
      cc.symbolic = false;
      return cc;
    }
    cc.slope += Rat(da / iv.step);
    cc.offset += Rat(db / iv.step + 1);
    const std::int64_t lo = iv.lo.eval(probe), hi = iv.hi.eval(probe);
    std::set<std::int64_t> inside;
    for (const auto& e : iv.excluded) {
      const std::int64_t v = e.eval(probe);
      if (v >= lo && v <= hi && floor_mod(v - lo, iv.step) == 0) inside.insert(v);
    }
    cc.offset -= Rat(static_cast<long>(inside.size()));
  }
  cc.matches_arity = cc.slope == 1 && cc.offset == 0;
  return cc;
}

}  // namespace

ValidationReport validate_spec(const EcoSpec& spec, std::int64_t kprobe) {
  ValidationReport rep;
  auto add = [&](ValidationIssue::Kind kind, std::int64_t k, std::string msg) {
    rep.valid = false;
    if (!rep.first_violation) rep.first_violation = k;
    rep.issues.push_back({kind, k, std::move(msg)});
  };

  const bool eco = spec.mode == Mode::eco;
  if (eco && spec.axiom < 1) add(ValidationIssue::Kind::bad_axiom, spec.axiom, "eco axiom must be >= 1");
  if (!eco && spec.axiom < 0) add(ValidationIssue::Kind::bad_axiom, spec.axiom, "walk axiom must be >= 0");

  for (std::size_t i = 0; i < spec.clauses.size(); ++i) rep.clause_counts.push_back(symbolic_count(spec.clauses[i], i));

  // Overlaps anywhere in the probe range.
  for (std::int64_t k = eco ? 1 : 0; k <= kprobe; ++k)
    if (matching_clause_count(spec, k) > 1) {
      add(ValidationIssue::Kind::guard_overlap, k, "several clauses match k=" + std::to_string(k));
      break;
    }

  // Numeric checks over reachable labels up to kprobe.
  std::set<Label> seen{spec.axiom};
  std::deque<Label> queue{spec.axiom};
  while (!queue.empty()) {
    const Label k = queue.front();
    queue.pop_front();
    if (k > kprobe) continue;
    ++rep.labels_checked;
    if (matching_clause_count(spec, k) == 0) {
      add(ValidationIssue::Kind::guard_gap, k, "no clause matches reachable label " + std::to_string(k));
      continue;
    }
    std::vector<Transition> ts;
    try {
      ts = expand(spec, k);
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      add(msg.find("multiplicity") != std::string::npos ? ValidationIssue::Kind::negative_multiplicity
                                                         : ValidationIssue::Kind::builtin_domain,
          k, msg);
      continue;
    }
    std::int64_t total = 0;
    for (const auto& t : ts) {
      total += t.count;
      if (eco && t.label < 1) {
        add(ValidationIssue::Kind::nonpositive_label, k, "label " + std::to_string(t.label) + " produced from k=" + std::to_string(k));
        continue;
      }
      if (!eco && t.label < 0) {
        add(ValidationIssue::Kind::negative_label, k, "label " + std::to_string(t.label) + " produced from k=" + std::to_string(k));
        continue;
      }
      if (seen.insert(t.label).second) queue.push_back(t.label);
    }
    if (eco && total != k)
      add(ValidationIssue::Kind::arity, k,
          "label " + std::to_string(k) + " has " + std::to_string(total) + " successors");
  }
  std::stable_sort(rep.issues.begin(), rep.issues.end(), [](const auto& a, const auto& b) { return a.k < b.k; });
  if (!rep.issues.empty()) rep.first_violation = rep.issues.front().k;
  return rep;
}

void require_valid(const EcoSpec& spec, std::int64_t kprobe) {
  const ValidationReport rep = validate_spec(spec, kprobe);
  if (!rep.valid) {
    const auto& issue = rep.issues.front();
    throw ValidationError(spec.name + ": " + std::string(issue_kind_name(issue.kind)) + " at k=" + std::to_string(issue.k) +
                          ": " + issue.message);
  }
}

}  // namespace ecogen
