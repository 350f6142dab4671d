#include "ecogen/kernel.hpp"

namespace ecogen {

Series SurdForm::expand(std::size_t order) const {
  const std::size_t v = static_cast<std::size_t>(std::max(0, [&] {
    int i = 0;
    while (i <= Den.degree() && Den[i] == 0) ++i;
    return i;
  }()));
  const std::size_t m = order + v;
  const Series root = series_sqrt(Series::from_poly(D, m));
  const Series num = Series::from_poly(P, m) - Series::from_poly(Q, m) * root;
  return series_div(num, Series::from_poly(Den, m)).truncated(order);
}

std::string SurdForm::to_string() const {
  return "((" + ecogen::to_string(P) + ") - (" + ecogen::to_string(Q) + ")*sqrt(" + ecogen::to_string(D) + "))/(" +
         ecogen::to_string(Den) + ")";
}

ClosedFormVerdict closed_form_check(const ClosedForm& form, const Series& f) {
  ClosedFormVerdict v;
  v.terms = f.order();
  if (const auto* rf = std::get_if<RationalFunction>(&form)) {
    v.first_difference = first_difference(rf->expand(f.order()), f);
  } else if (const auto* sf = std::get_if<SurdForm>(&form)) {
    v.first_difference = first_difference(sf->expand(f.order()), f);
  } else if (const auto* gf = std::get_if<SeriesForm>(&form)) {
    v.first_difference = first_difference(gf->expand(f.order()), f);
  } else {
    const auto& q = std::get<AlgebraicGuess>(form);
    // Smallest prefix on which Q(z, F) stops vanishing.
    if (!annihilates(q, f)) {
      std::size_t lo = 0, hi = f.order();
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (annihilates(q, f.truncated(mid)))
          lo = mid;
        else
          hi = mid;
      }
      v.first_difference = static_cast<std::ptrdiff_t>(lo);
    }
  }
  v.match = v.first_difference < 0;
  return v;
}

std::string closed_form_text(const ClosedForm& form) {
  if (const auto* rf = std::get_if<RationalFunction>(&form)) return rf->to_string();
  if (const auto* sf = std::get_if<SurdForm>(&form)) return sf->to_string();
  if (const auto* gf = std::get_if<SeriesForm>(&form)) return gf->text;
  return std::get<AlgebraicGuess>(form).to_string() + " = 0";
}

}  // namespace ecogen
