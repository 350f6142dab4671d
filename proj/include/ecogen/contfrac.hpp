#pragma once

// Excursion generating functions of birth-death rules as truncated
// continued fractions.

#include <cstddef>
#include <cstdint>
#include <functional>

#include "ecogen/arith.hpp"
#include "ecogen/spec.hpp"

namespace ecogen {

/// (k) -> (k-1)^a_k (k)^b_k (k+1)^c_k on levels k >= 0.
struct BirthDeathRule {
  std::function<std::int64_t(std::int64_t)> a;
  std::function<std::int64_t(std::int64_t)> b;
  std::function<std::int64_t(std::int64_t)> c;

  static BirthDeathRule constant(std::int64_t a, std::int64_t b, std::int64_t c);
  // Levels are labels shifted by the axiom. Evaluation throws ValidationError
  // on a jump outside {-1, 0, 1} or a step below the axiom.
  static BirthDeathRule from_spec(const EcoSpec& spec);
};

// Walks from level 0 back to level 0, to `order` terms.
Series cf_excursions(const BirthDeathRule& rule, std::size_t order);
// Same with an explicit number of levels below the top.
Series cf_excursions_depth(const BirthDeathRule& rule, std::size_t order, std::size_t depth);

}  // namespace ecogen
