#pragma once

// Structural criteria on rewriting systems and the closed forms they imply.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecogen/arith.hpp"
#include "ecogen/guess.hpp"
#include "ecogen/spec.hpp"

namespace ecogen {

struct LabelSet {
  std::vector<Label> labels;  // sorted; complete only when finite
  bool finite = false;
};

LabelSet reachable_labels(const EcoSpec& spec, std::size_t cutoff);

/// One-step transition counts between the labels of a finite label set.
struct TransitionMatrix {
  std::vector<Label> labels;
  std::vector<std::vector<BigInt>> pi;  // pi[j][k]: edges from labels[j] to labels[k]
};

TransitionMatrix transition_matrix(const EcoSpec& spec, const std::vector<Label>& labels);

// Nullopt when more than `cutoff` labels are reachable.
std::optional<RationalFunction> rational_from_finite(const EcoSpec& spec, std::size_t cutoff = 64);

/// sigma(k) = sum of successor labels = alpha k + beta.
struct AffineSigma {
  Rat alpha;
  Rat beta;
};

std::optional<AffineSigma> affine_sigma(const EcoSpec& spec, Label probe = 200);
RationalFunction rational_gf_affine(const AffineSigma& w, Label s0);

struct ParityWitness {
  Rat alpha;
  Rat beta0;  // even labels
  Rat beta1;  // odd labels
  std::int64_t m = 0;  // odd labels on every right-hand side
  Label s0 = 0;
  Rat s1;  // sigma(s0)
};

std::optional<ParityWitness> parity_affine(const EcoSpec& spec, Label probe = 200);
RationalFunction rational_gf_parity(const ParityWitness& w);

/// Bounded successors plus a fixed multiset of linear ones, (k) -> c_1..c_{k-m}, k+a_1..k+a_m.
struct BoundedLinearForm {
  std::vector<std::int64_t> jumps;  // a_1 <= ... <= a_m
  Label bound = 0;                  // C: largest bounded label, axiom included
  bool periodic_guards = true;      // transition counts eventually periodic in k
};

std::optional<BoundedLinearForm> bounded_linear_form(const EcoSpec& spec);

/// Successors of k are [r, k-1] minus (k - B) minus (r + C), plus k + A.
struct WalkForm {
  std::int64_t r = 0;
  std::vector<std::int64_t> A;  // multiset, sorted
  std::vector<std::int64_t> B;  // positive, sorted
  std::vector<std::int64_t> C;  // nonnegative offsets from r, sorted
  std::int64_t a = 0;           // max A
  std::int64_t b = 0;           // max(0, max B, max -A)
  Label from = 0;               // first label the shape is valid for
  Label walk_axiom = 0;         // axiom - r
  bool real = false;            // eco system with B, C empty and |A| = r
};

std::optional<WalkForm> factorial_form(const EcoSpec& spec);
std::map<Label, std::int64_t> walk_successors(const WalkForm& w, Label k);

struct RadiusZeroVerdict {
  enum class Kind { holds, inconclusive };
  Kind kind = Kind::inconclusive;
  std::int64_t b = 0;
  std::string reason;
  std::vector<std::pair<Label, std::int64_t>> m_values;  // m(k) on probed labels
  std::optional<Rat> tail_slope;                        // growth rate of m(k) for large k
};

RadiusZeroVerdict radius_zero_check(const EcoSpec& spec, std::int64_t b, Label probe = 100);

struct LinearBound {
  bool bounded = false;
  std::int64_t slope = 0;
  std::string reason;
};

LinearBound linear_bound_check(const EcoSpec& spec);

std::string_view verdict_name(RadiusZeroVerdict::Kind kind);

struct ClassifyOptions {
  std::size_t finite_cutoff = 64;
  std::size_t verify_order = 25;
  std::vector<std::int64_t> b_values{0, 1, 2, 3};
  Label probe = 100;
};

struct ClassificationReport {
  std::string system;
  LabelSet labels;
  std::optional<RationalFunction> finite_gf;
  std::optional<AffineSigma> affine;
  std::optional<RationalFunction> affine_gf;
  std::optional<ParityWitness> parity;
  std::optional<RationalFunction> parity_gf;
  std::optional<BoundedLinearForm> bounded_linear;
  std::optional<RationalFunction> guessed_gf;  // rational fit for the bounded-linear form
  std::optional<WalkForm> factorial;
  std::vector<RadiusZeroVerdict> radius_zero;
  LinearBound linear_bound;
  // Closed forms that failed re-expansion against the engine.
  std::vector<std::string> mismatches;
  std::vector<std::string> notes;

  // First closed form found, in criterion order.
  std::optional<RationalFunction> closed_form() const;
};

ClassificationReport classify(const EcoSpec& spec, const ClassifyOptions& opts = {});
std::string report_json(const ClassificationReport& report);

}  // namespace ecogen
