#include "ecogen/classify.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "ecogen/engine.hpp"
#include "json.hpp"

namespace ecogen {

namespace {

constexpr Label kNoCap = 1'000'000'000'000'000LL;

Poly affine_poly(const Expr& e) { return Poly(std::vector<Rat>{Rat(e.offset()), Rat(e.slope())}); }

// A large k satisfying the guard, for deciding which exclusions fall inside
// their interval once k is big.
std::optional<Label> large_probe(const Guard& g) {
  for (Label k = 1'000'000; k < 1'010'000; ++k)
    if (g.holds(k)) return k;
  for (Label k = Label{1} << 20; k < (Label{1} << 40); k <<= 1)
    if (g.holds(k)) return k;
  return std::nullopt;
}

Label domain_floor(const EcoSpec& spec, const Guard& g) {
  const Label lo = spec.mode == Mode::eco ? 1 : 0;
  return std::max(lo, g.lower_bound().value_or(lo));
}

/// Sum of successor labels of one clause: a polynomial in k plus builtin terms.
struct SymbolicSum {
  Poly poly;
  std::map<std::string, Rat> builtins;
};

std::optional<SymbolicSum> clause_sigma(const Clause& clause) {
  SymbolicSum s;
  const auto probe = large_probe(clause.guard);
  if (!probe) return std::nullopt;
  for (const auto& prod : clause.productions) {
    if (const auto* item = std::get_if<Item>(&prod)) {
      if (!item->multiplicity.is_affine()) return std::nullopt;
      if (item->label.is_affine()) {
        s.poly = s.poly + affine_poly(item->multiplicity) * affine_poly(item->label);
      } else {
        if (!item->multiplicity.is_constant()) return std::nullopt;
        s.builtins[item->label.to_string()] += Rat(item->multiplicity.offset());
      }
      continue;
    }
    const auto& iv = std::get<Interval>(prod);
    if (!iv.lo.is_affine() || !iv.hi.is_affine()) return std::nullopt;
    const std::int64_t da = iv.hi.slope() - iv.lo.slope();
    const std::int64_t db = iv.hi.offset() - iv.lo.offset();
    if (da < 0 || (da == 0 && db < 0)) continue;
    if (da % iv.step != 0 || db % iv.step != 0) return std::nullopt;
    const Poly count = Poly(std::vector<Rat>{Rat(db / iv.step + 1), Rat(da / iv.step)});
    const Poly lo = affine_poly(iv.lo);
    const Poly last = lo + Rat(iv.step) * (count - Poly::constant(1));
    s.poly = s.poly + Rat(1, 2) * count * (lo + last);
    const Label plo = iv.lo.eval(*probe), phi = iv.hi.eval(*probe);
    std::set<Label> seen;
    for (const auto& e : iv.excluded) {
      if (!e.is_affine()) return std::nullopt;
      const Label v = e.eval(*probe);
      if (v < plo || v > phi || (v - plo) % iv.step != 0 || !seen.insert(v).second) continue;
      s.poly = s.poly - affine_poly(e);
    }
  }
  // goldbach_low(k) + goldbach_high(k) = 2k + 3 - next_prime(k)
  auto lo = s.builtins.find("goldbach_low(k)");
  auto hi = s.builtins.find("goldbach_high(k)");
  if (lo != s.builtins.end() && hi != s.builtins.end() && lo->second == hi->second) {
    const Rat c = lo->second;
    s.builtins.erase(lo);
    s.builtins.erase(hi);
    s.poly = s.poly + c * Poly{3, 2};
    s.builtins["next_prime(k)"] -= c;
  }
  std::erase_if(s.builtins, [](const auto& e) { return e.second == 0; });
  return s;
}

Rat sigma_at(const EcoSpec& spec, Label k) {
  Rat s = 0;
  for (const auto& t : expand(spec, k)) s += Rat(t.label) * Rat(t.count);
  return s;
}

std::vector<Label> probe_labels(const EcoSpec& spec, Label probe) {
  const Reachable r = reachable_within(spec, probe, 1'000'000);
  std::vector<Label> out;
  for (Label k : r.labels)
    if (k <= probe) out.push_back(k);
  return out;
}

struct AffinePair {
  Rat alpha;
  Rat beta;
};

std::optional<AffinePair> affine_part(const SymbolicSum& s) {
  if (!s.builtins.empty() || s.poly.degree() > 1) return std::nullopt;
  return AffinePair{s.poly[1], s.poly[0]};
}

// Verifies the closed form against the engine; records a mismatch otherwise.
// Systems whose labels grow geometrically hit the label cap early; the check
// then shrinks to the longest prefix the engine can reach.
bool verified(const EcoSpec& spec, const RationalFunction& f, std::size_t order, const std::string& what,
              std::vector<std::string>& mismatches, std::vector<std::string>& notes) {
  const std::size_t need = 2 * static_cast<std::size_t>(std::max(f.num.degree(), f.den.degree())) + 5;
  std::size_t n = std::max(order, need);
  Series engine;
  for (;;) {
    try {
      engine = series_F(spec, n);
      break;
    } catch (const ResourceLimitError&) {
      if (n <= need) {
        mismatches.push_back(what + ": engine cannot reach " + std::to_string(need) + " terms under the label cap");
        return false;
      }
      n = std::max(need, n - 1);
    }
  }
  if (n < order) notes.push_back(what + ": verified on " + std::to_string(n) + " terms (label cap)");
  const Series closed = f.expand(n);
  const auto d = first_difference(engine, closed);
  if (d < 0) return true;
  mismatches.push_back(what + ": " + f.to_string() + " differs from the engine at z^" + std::to_string(d));
  return false;
}

}  // namespace

// ---------------------------------------------------------------- finite label sets

LabelSet reachable_labels(const EcoSpec& spec, std::size_t cutoff) {
  const Reachable r = reachable_within(spec, kNoCap, cutoff);
  // Labels past the cap are recorded without being expanded.
  const bool capped = !r.labels.empty() && r.labels.back() > kNoCap;
  return {r.labels, !r.truncated && !capped};
}

TransitionMatrix transition_matrix(const EcoSpec& spec, const std::vector<Label>& labels) {
  TransitionMatrix t;
  t.labels = labels;
  t.pi.assign(labels.size(), std::vector<BigInt>(labels.size()));
  for (std::size_t j = 0; j < labels.size(); ++j)
    for (const auto& [l, c] : successors(spec, labels[j])) {
      auto it = std::lower_bound(labels.begin(), labels.end(), l);
      if (it == labels.end() || *it != l)
        throw ValidationError(spec.name + ": successor " + std::to_string(l) + " outside the label set");
      t.pi[j][static_cast<std::size_t>(it - labels.begin())] += c;
    }
  return t;
}

std::optional<RationalFunction> rational_from_finite(const EcoSpec& spec, std::size_t cutoff) {
  const LabelSet ls = reachable_labels(spec, cutoff);
  if (!ls.finite) return std::nullopt;
  const TransitionMatrix t = transition_matrix(spec, ls.labels);
  const std::size_t n = ls.labels.size();
  const auto s = static_cast<std::size_t>(
      std::lower_bound(ls.labels.begin(), ls.labels.end(), spec.axiom) - ls.labels.begin());
  // x = (I - z Pi)^{-1} 1 and F = x_axiom; Cramer's rule at integer points,
  // then interpolation of both determinants (degrees <= n).
  std::vector<Rat> xs, dets, nums;
  for (std::size_t p = 0; p <= n; ++p) {
    const BigInt z(static_cast<long>(p));
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? BigInt(1) : BigInt(0)) - z * t.pi[i][j];
    auto as = a;
    for (std::size_t i = 0; i < n; ++i) as[i][s] = 1;
    xs.emplace_back(z);
    dets.emplace_back(determinant(std::move(a)));
    nums.emplace_back(determinant(std::move(as)));
  }
  const Poly den = interpolate(xs, dets);
  const Poly num = interpolate(xs, nums);
  if (den.is_zero() || den[0] == 0)
    throw ArithmeticError(ArithmeticError::Kind::singular_system, spec.name + ": singular transition system");
  return RationalFunction::reduced(num, den);
}

// ---------------------------------------------------------------- affine sigma

std::optional<AffineSigma> affine_sigma(const EcoSpec& spec, Label probe) {
  if (spec.mode != Mode::eco) return std::nullopt;
  std::optional<AffinePair> w;
  for (const auto& c : spec.clauses) {
    if (c.guard.upper_bound()) continue;
    const auto s = clause_sigma(c);
    if (!s) return std::nullopt;
    const auto p = affine_part(*s);
    if (!p) return std::nullopt;
    if (w && (w->alpha != p->alpha || w->beta != p->beta)) return std::nullopt;
    w = p;
  }
  if (!w) return std::nullopt;
  for (Label k : probe_labels(spec, probe))
    if (sigma_at(spec, k) != w->alpha * k + w->beta) return std::nullopt;
  return AffineSigma{w->alpha, w->beta};
}

RationalFunction rational_gf_affine(const AffineSigma& w, Label s0) {
  return RationalFunction::reduced(Poly(std::vector<Rat>{Rat(1), Rat(s0) - w.alpha}),
                                   Poly(std::vector<Rat>{Rat(1), -w.alpha, -w.beta}));
}

// ---------------------------------------------------------------- parity

namespace {

// Parity of an item label on the residue class k = r mod 2, when fixed.
std::optional<int> label_parity(const Expr& e, std::int64_t r) {
  if (!e.is_affine()) return std::nullopt;
  const std::int64_t v = e.slope() * r + e.offset();
  return static_cast<int>(((v % 2) + 2) % 2);
}

}  // namespace

std::optional<ParityWitness> parity_affine(const EcoSpec& spec, Label probe) {
  if (spec.mode != Mode::eco) return std::nullopt;
  std::optional<AffinePair> part[2];
  for (const auto& c : spec.clauses) {
    if (c.guard.upper_bound()) continue;
    const auto r = c.guard.residue(2);
    if (!r) return std::nullopt;
    const auto s = clause_sigma(c);
    if (!s) return std::nullopt;
    const auto p = affine_part(*s);
    if (!p) return std::nullopt;
    auto& slot = part[*r];
    if (slot && (slot->alpha != p->alpha || slot->beta != p->beta)) return std::nullopt;
    slot = p;
    // Odd-label counts must not grow with k.
    for (const auto& prod : c.productions) {
      if (const auto* item = std::get_if<Item>(&prod)) {
        if (item->multiplicity.is_constant()) continue;
        const auto par = label_parity(item->label, *r);
        if (!par || *par == 1) return std::nullopt;
      } else {
        const auto& iv = std::get<Interval>(prod);
        if (!iv.lo.is_constant() || !iv.hi.is_constant()) return std::nullopt;
      }
    }
  }
  if (!part[0] || !part[1] || part[0]->alpha != part[1]->alpha) return std::nullopt;

  std::optional<std::int64_t> m;
  for (Label k : probe_labels(spec, probe)) {
    const auto& w = part[k % 2];
    if (sigma_at(spec, k) != w->alpha * k + w->beta) return std::nullopt;
    std::int64_t odd = 0;
    for (const auto& t : expand(spec, k))
      if (t.label % 2 != 0) odd += t.count;
    if (m && *m != odd) return std::nullopt;
    m = odd;
  }
  if (!m) return std::nullopt;
  ParityWitness w;
  w.alpha = part[0]->alpha;
  w.beta0 = part[0]->beta;
  w.beta1 = part[1]->beta;
  w.m = *m;
  w.s0 = spec.axiom;
  w.s1 = sigma_at(spec, spec.axiom);
  return w;
}

RationalFunction rational_gf_parity(const ParityWitness& w) {
  const Rat s0(w.s0);
  Poly num(std::vector<Rat>{Rat(1), s0 - w.alpha, w.s1 - w.alpha * s0 - w.beta0});
  Poly den(std::vector<Rat>{Rat(1), -w.alpha, -w.beta0, -Rat(w.m) * (w.beta1 - w.beta0)});
  return RationalFunction::reduced(num, den);
}

// ---------------------------------------------------------------- bounded + linear

std::optional<BoundedLinearForm> bounded_linear_form(const EcoSpec& spec) {
  if (spec.mode != Mode::eco) return std::nullopt;
  BoundedLinearForm f;
  f.bound = spec.axiom;
  std::optional<std::vector<std::int64_t>> jumps;
  bool bounded_clauses = false;
  for (const auto& c : spec.clauses) {
    f.periodic_guards = f.periodic_guards && c.guard.is_periodic();
    if (c.guard.upper_bound()) {
      bounded_clauses = true;
      continue;
    }
    std::vector<std::int64_t> js;
    for (const auto& prod : c.productions) {
      if (const auto* item = std::get_if<Item>(&prod)) {
        const Expr& l = item->label;
        if (!l.is_affine()) return std::nullopt;
        if (l.is_constant()) {
          f.bound = std::max(f.bound, l.offset());
        } else if (l.slope() == 1 && l.offset() >= 1 && item->multiplicity.is_constant()) {
          for (std::int64_t i = 0; i < item->multiplicity.offset(); ++i) js.push_back(l.offset());
        } else {
          return std::nullopt;
        }
      } else {
        const auto& iv = std::get<Interval>(prod);
        if (!iv.lo.is_constant() || !iv.hi.is_constant()) return std::nullopt;
        f.bound = std::max(f.bound, iv.hi.offset());
      }
    }
    std::sort(js.begin(), js.end());
    if (jumps && *jumps != js) return std::nullopt;
    jumps = std::move(js);
  }
  if (!jumps || jumps->empty()) return std::nullopt;
  f.jumps = *jumps;
  if (bounded_clauses) {
    // Labels emitted by the small-k rules count towards the bound.
    for (const auto& c : spec.clauses) {
      const auto ub = c.guard.upper_bound();
      if (!ub) continue;
      for (Label k = domain_floor(spec, c.guard); k <= *ub; ++k) {
        if (!c.guard.holds(k) || matching_clause(spec, k) != &c) continue;
        for (const auto& t : expand(spec, k)) f.bound = std::max(f.bound, t.label);
      }
    }
  }
  return f;
}

// ---------------------------------------------------------------- factorial form

std::optional<WalkForm> factorial_form(const EcoSpec& spec) {
  const Clause* main = nullptr;
  for (const auto& c : spec.clauses) {
    if (c.guard.upper_bound()) continue;
    if (main) return std::nullopt;
    main = &c;
  }
  if (!main) return std::nullopt;
  for (const auto& a : main->guard.atoms)
    if (a.kind != GuardAtom::Kind::ge) return std::nullopt;

  WalkForm w;
  bool have_interval = false;
  std::multiset<std::int64_t> A;
  std::set<std::int64_t> B, C;
  for (const auto& prod : main->productions) {
    if (const auto* item = std::get_if<Item>(&prod)) {
      const Expr& l = item->label;
      if (!l.is_affine() || l.slope() != 1 || !item->multiplicity.is_constant()) return std::nullopt;
      for (std::int64_t i = 0; i < item->multiplicity.offset(); ++i) A.insert(l.offset());
      continue;
    }
    const auto& iv = std::get<Interval>(prod);
    if (have_interval || iv.step != 1 || !iv.lo.is_constant() || !iv.hi.is_affine() || iv.hi.slope() != 1)
      return std::nullopt;
    have_interval = true;
    w.r = iv.lo.offset();
    const std::int64_t t = iv.hi.offset();
    for (std::int64_t x = 0; x <= t; ++x) A.insert(x);
    for (std::int64_t beta = 1; beta <= -t - 1; ++beta) B.insert(beta);
    for (const auto& e : iv.excluded) {
      if (!e.is_affine()) return std::nullopt;
      if (e.is_constant()) {
        if (e.offset() >= w.r) C.insert(e.offset() - w.r);
      } else if (e.slope() == 1 && e.offset() <= -1 && e.offset() <= t) {
        if (!B.insert(-e.offset()).second) return std::nullopt;
      } else {
        return std::nullopt;
      }
    }
  }
  if (!have_interval) return std::nullopt;
  if (spec.mode == Mode::eco && w.r < 1) return std::nullopt;
  w.A.assign(A.begin(), A.end());
  w.B.assign(B.begin(), B.end());
  w.C.assign(C.begin(), C.end());
  w.a = w.A.empty() ? 0 : w.A.back();
  w.b = 0;
  if (!w.B.empty()) w.b = std::max(w.b, w.B.back());
  if (!w.A.empty()) w.b = std::max(w.b, -w.A.front());
  w.from = domain_floor(spec, main->guard);
  w.walk_axiom = spec.axiom - w.r;
  w.real = spec.mode == Mode::eco && spec.clauses.size() == 1 && w.B.empty() && w.C.empty() &&
           static_cast<std::int64_t>(w.A.size()) == w.r;
  return w;
}

std::map<Label, std::int64_t> walk_successors(const WalkForm& w, Label k) {
  std::map<Label, std::int64_t> out;
  std::set<Label> skip;
  for (auto beta : w.B) skip.insert(k - beta);
  for (auto c : w.C) skip.insert(w.r + c);
  for (Label l = w.r; l <= k - 1; ++l)
    if (!skip.contains(l)) out[l] += 1;
  for (auto alpha : w.A) out[k + alpha] += 1;
  return out;
}

// ---------------------------------------------------------------- radius zero

std::string_view verdict_name(RadiusZeroVerdict::Kind kind) {
  return kind == RadiusZeroVerdict::Kind::holds ? "holds" : "inconclusive";
}

namespace {

// Growth rate in k of |{successors >= k - b}| for one production.
std::optional<Rat> tail_slope(const Production& prod, std::int64_t b) {
  if (const auto* item = std::get_if<Item>(&prod)) {
    if (!item->multiplicity.is_affine()) return std::nullopt;
    const Rat mult(item->multiplicity.slope());
    const Expr& l = item->label;
    if (l.is_affine()) {
      const bool counted = l.slope() > 1 || (l.slope() == 1 && l.offset() >= -b);
      return counted ? mult : Rat(0);
    }
    switch (*l.builtin()) {
      case Builtin::next_prime: return mult;
      case Builtin::ceil_div: {
        const auto& args = l.args();
        if (!args[0].is_affine() || !args[1].is_constant() || args[1].offset() <= 0) return std::nullopt;
        const Rat rate(args[0].slope(), args[1].offset());
        if (rate == 1) return std::nullopt;
        return rate > 1 ? mult : Rat(0);
      }
      default: return std::nullopt;
    }
  }
  const auto& iv = std::get<Interval>(prod);
  if (!iv.lo.is_affine() || !iv.hi.is_affine()) return std::nullopt;
  const std::int64_t h = iv.hi.slope(), l = iv.lo.slope();
  if (h < 1 || (h == 1 && iv.hi.offset() < -b)) return Rat(0);
  const std::int64_t low = std::max<std::int64_t>(l, 1);
  if (h <= low) return Rat(0);
  return Rat(h - low, iv.step);
}

}  // namespace

RadiusZeroVerdict radius_zero_check(const EcoSpec& spec, std::int64_t b, Label probe) {
  RadiusZeroVerdict v;
  v.b = b;
  v.kind = RadiusZeroVerdict::Kind::inconclusive;
  const auto ks = probe_labels(spec, probe);
  std::optional<std::int64_t> prev;
  for (Label k : ks) {
    std::int64_t m = 0;
    bool forward = false;
    for (const auto& t : expand(spec, k)) {
      if (t.label >= k - b) m += t.count;
      if (t.label > k) forward = true;
    }
    v.m_values.emplace_back(k, m);
    if (!forward) {
      v.reason = "no forward jump from k=" + std::to_string(k);
      return v;
    }
    if (prev && m < *prev) {
      v.reason = "m(k) decreases at k=" + std::to_string(k);
      return v;
    }
    prev = m;
  }
  if (ks.empty()) {
    v.reason = "no labels to probe";
    return v;
  }
  std::optional<Rat> slope;
  for (const auto& c : spec.clauses) {
    if (c.guard.upper_bound()) continue;
    Rat s = 0;
    for (const auto& prod : c.productions) {
      const auto ps = tail_slope(prod, b);
      if (!ps) {
        v.reason = "m(k) has no symbolic tail for rule '" + c.guard.to_string() + "'";
        return v;
      }
      s += *ps;
    }
    if (!slope || s < *slope) slope = s;
  }
  if (!slope) {
    v.reason = "every rule is bounded in k";
    return v;
  }
  v.tail_slope = slope;
  if (*slope <= 0) {
    v.reason = "m(k) stays bounded";
    return v;
  }
  v.kind = RadiusZeroVerdict::Kind::holds;
  v.reason = "forward jumps everywhere, m(k) nondecreasing on probes and growing like " + slope->get_str() + "*k";
  return v;
}

// ---------------------------------------------------------------- linear bound

LinearBound linear_bound_check(const EcoSpec& spec) {
  LinearBound lb;
  std::int64_t jump = 0;
  auto fail = [&](const std::string& why) {
    lb.bounded = false;
    lb.slope = 0;
    lb.reason = why;
    return lb;
  };
  for (const auto& c : spec.clauses) {
    const Label lo = domain_floor(spec, c.guard);
    if (const auto ub = c.guard.upper_bound()) {
      for (Label k = lo; k <= *ub; ++k) {
        if (!c.guard.holds(k) || matching_clause(spec, k) != &c) continue;
        for (const auto& t : expand(spec, k)) jump = std::max(jump, t.label - k);
      }
      continue;
    }
    auto label_jump = [&](const Expr& e) -> std::optional<std::int64_t> {
      if (e.is_affine()) {
        if (e.slope() > 1) return std::nullopt;
        if (e.slope() == 1) return e.offset();
        return (e.slope() - 1) * lo + e.offset();
      }
      if (*e.builtin() == Builtin::ceil_div && e.args()[0].is_affine() && e.args()[1].is_constant() &&
          e.args()[1].offset() > 0 && e.args()[0].slope() <= e.args()[1].offset()) {
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (Label k = lo; k <= lo + e.args()[1].offset(); ++k) best = std::max(best, e.eval(k) - k);
        return best;
      }
      return std::nullopt;
    };
    for (const auto& prod : c.productions) {
      const Expr& e = std::holds_alternative<Item>(prod) ? std::get<Item>(prod).label : std::get<Interval>(prod).hi;
      const auto j = label_jump(e);
      if (!j) return fail("label " + e.to_string() + " outgrows k + const");
      jump = std::max(jump, *j);
    }
  }
  lb.bounded = true;
  lb.slope = jump;
  lb.reason = "labels at level n are at most axiom + " + std::to_string(jump) + "*n";
  return lb;
}

// ---------------------------------------------------------------- report

std::optional<RationalFunction> ClassificationReport::closed_form() const {
  if (finite_gf) return finite_gf;
  if (affine_gf) return affine_gf;
  if (parity_gf) return parity_gf;
  return guessed_gf;
}

ClassificationReport classify(const EcoSpec& spec, const ClassifyOptions& opts) {
  require_valid(spec);
  ClassificationReport rep;
  rep.system = spec.name;
  rep.labels = reachable_labels(spec, opts.finite_cutoff);
  if (rep.labels.finite) {
    auto f = rational_from_finite(spec, opts.finite_cutoff);
    if (f && verified(spec, *f, opts.verify_order, "finite_labels", rep.mismatches, rep.notes)) rep.finite_gf = f;
  }
  rep.affine = affine_sigma(spec);
  if (rep.affine) {
    auto f = rational_gf_affine(*rep.affine, spec.axiom);
    if (verified(spec, f, opts.verify_order, "affine_sigma", rep.mismatches, rep.notes)) rep.affine_gf = f;
  }
  rep.parity = parity_affine(spec);
  if (rep.parity) {
    auto f = rational_gf_parity(*rep.parity);
    if (verified(spec, f, opts.verify_order, "parity_affine", rep.mismatches, rep.notes)) rep.parity_gf = f;
  }
  rep.bounded_linear = bounded_linear_form(spec);
  if (rep.bounded_linear) {
    const int dmax = 10;
    const std::size_t holdout = 10;
    try {
      auto g = guess_rational(series_F(spec, 2 * dmax + holdout + 2), dmax, holdout);
      if (g) rep.guessed_gf = g->f;
    } catch (const ResourceLimitError& e) {
      rep.notes.push_back(std::string("bounded_linear: no guess, ") + e.what());
    }
  }
  rep.factorial = factorial_form(spec);
  for (auto b : opts.b_values) rep.radius_zero.push_back(radius_zero_check(spec, b, opts.probe));
  rep.linear_bound = linear_bound_check(spec);
  return rep;
}

namespace {

using nlohmann::json;

json poly_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

json rf_json(const std::optional<RationalFunction>& f) {
  if (!f) return nullptr;
  return {{"numerator", poly_json(f->num)}, {"denominator", poly_json(f->den)}, {"text", f->to_string()}};
}

json ints_json(const std::vector<std::int64_t>& v) { return json(v); }

}  // namespace

std::string report_json(const ClassificationReport& r) {
  json criteria = json::array();
  {
    json labels = r.labels.finite ? json(r.labels.labels) : json(nullptr);
    criteria.push_back({{"name", "finite_labels"},
                        {"verdict", r.finite_gf ? "holds" : "no"},
                        {"witness", {{"labels", labels}}},
                        {"closed_form", rf_json(r.finite_gf)}});
  }
  {
    json w = r.affine ? json{{"alpha", r.affine->alpha.get_str()}, {"beta", r.affine->beta.get_str()}} : json(nullptr);
    criteria.push_back({{"name", "affine_sigma"},
                        {"verdict", r.affine_gf ? "holds" : "no"},
                        {"witness", w},
                        {"closed_form", rf_json(r.affine_gf)}});
  }
  {
    json w = nullptr;
    if (r.parity)
      w = {{"alpha", r.parity->alpha.get_str()}, {"beta0", r.parity->beta0.get_str()},
           {"beta1", r.parity->beta1.get_str()}, {"m", r.parity->m},
           {"s0", r.parity->s0},                 {"s1", r.parity->s1.get_str()}};
    criteria.push_back({{"name", "parity_affine"},
                        {"verdict", r.parity_gf ? "holds" : "no"},
                        {"witness", w},
                        {"closed_form", rf_json(r.parity_gf)}});
  }
  {
    json w = nullptr;
    if (r.bounded_linear)
      w = {{"jumps", ints_json(r.bounded_linear->jumps)},
           {"bound", r.bounded_linear->bound},
           {"periodic_guards", r.bounded_linear->periodic_guards}};
    criteria.push_back({{"name", "bounded_linear"},
                        {"verdict", r.bounded_linear ? "detected" : "no"},
                        {"witness", w},
                        {"closed_form", rf_json(r.guessed_gf)},
                        {"closed_form_source", r.guessed_gf ? "fitted, verified on held-out terms" : ""}});
  }
  {
    json w = nullptr;
    if (r.factorial)
      w = {{"r", r.factorial->r},       {"A", ints_json(r.factorial->A)}, {"B", ints_json(r.factorial->B)},
           {"C", ints_json(r.factorial->C)}, {"a", r.factorial->a},         {"b", r.factorial->b},
           {"from", r.factorial->from}, {"walk_axiom", r.factorial->walk_axiom}, {"real", r.factorial->real}};
    criteria.push_back({{"name", "factorial_form"}, {"verdict", r.factorial ? "detected" : "no"}, {"witness", w}});
  }
  {
    json results = json::array();
    bool any = false;
    for (const auto& v : r.radius_zero) {
      json m = json::array();
      for (std::size_t i = 0; i < v.m_values.size() && i < 12; ++i) m.push_back({v.m_values[i].first, v.m_values[i].second});
      results.push_back({{"b", v.b},
                         {"verdict", verdict_name(v.kind)},
                         {"reason", v.reason},
                         {"tail_slope", v.tail_slope ? json(v.tail_slope->get_str()) : json(nullptr)},
                         {"m_values", std::move(m)}});
      any = any || v.kind == RadiusZeroVerdict::Kind::holds;
    }
    criteria.push_back({{"name", "radius_zero"}, {"verdict", any ? "holds" : "inconclusive"}, {"results", results}});
  }
  criteria.push_back({{"name", "linear_bound"},
                      {"verdict", r.linear_bound.bounded ? "bounded" : "not"},
                      {"slope", r.linear_bound.bounded ? json(r.linear_bound.slope) : json(nullptr)},
                      {"reason", r.linear_bound.reason}});
  json doc{{"system", r.system},
           {"criteria", std::move(criteria)},
           {"closed_form", rf_json(r.closed_form())},
           {"mismatches", r.mismatches},
           {"notes", r.notes}};
  return doc.dump(2) + "\n";
}

}  // namespace ecogen
