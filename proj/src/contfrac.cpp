#include "ecogen/contfrac.hpp"

#include <memory>

namespace ecogen {

BirthDeathRule BirthDeathRule::constant(std::int64_t a, std::int64_t b, std::int64_t c) {
  return {[a](std::int64_t k) { return k == 0 ? 0 : a; }, [b](std::int64_t) { return b; },
          [c](std::int64_t) { return c; }};
}

BirthDeathRule BirthDeathRule::from_spec(const EcoSpec& spec) {
  auto shared = std::make_shared<const EcoSpec>(spec);
  auto mult = [shared](std::int64_t level, std::int64_t jump) -> std::int64_t {
    const std::int64_t k = shared->axiom + level;
    std::int64_t out = 0;
    for (const auto& [label, count] : successors(*shared, k)) {
      const std::int64_t d = label - k;
      if (d < -1 || d > 1)
        throw ValidationError("label " + std::to_string(k) + " jumps to " + std::to_string(label) +
                              ", outside {k-1, k, k+1}");
      if (label < shared->axiom)
        throw ValidationError("label " + std::to_string(k) + " steps below the axiom");
      if (d == jump) out += count;
    }
    return out;
  };
  return {[mult](std::int64_t k) { return mult(k, -1); }, [mult](std::int64_t k) { return mult(k, 0); },
          [mult](std::int64_t k) { return mult(k, 1); }};
}

Series cf_excursions_depth(const BirthDeathRule& rule, std::size_t order, std::size_t depth) {
  if (order == 0) return Series();
  // T_D = 1 - b_D z, T_k = 1 - b_k z - a_{k+1} c_k z^2 / T_{k+1}, F = 1/T_0.
  const auto level_poly = [&](std::int64_t k) { return Series::from_poly(Poly{1, -rule.b(k)}, order); };
  Series t = level_poly(static_cast<std::int64_t>(depth));
  for (std::int64_t k = static_cast<std::int64_t>(depth) - 1; k >= 0; --k) {
    const Rat w = Rat(rule.a(k + 1)) * Rat(rule.c(k));
    Series next = level_poly(k);
    if (w != 0) next = next - Series::from_poly(Poly::monomial(w, 2), order) * series_inverse(t);
    t = std::move(next);
  }
  return series_inverse(t);
}

Series cf_excursions(const BirthDeathRule& rule, std::size_t order) {
  return cf_excursions_depth(rule, order, (order + 1) / 2 + 1);
}

}  // namespace ecogen
