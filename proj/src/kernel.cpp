#include "ecogen/kernel.hpp"

#include <algorithm>

#include "json.hpp"

namespace ecogen {

namespace {

Poly u_power(std::int64_t e, const Rat& c = 1) { return Poly::monomial(c, static_cast<int>(e)); }

Series padded_to(const Series& s, std::size_t order) {
  std::vector<Rat> c(order);
  for (std::size_t i = 0; i < std::min(order, s.order()); ++i) c[i] = s[i];
  return Series(std::move(c));
}

nlohmann::json series_json(const Series& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : s.coeffs()) arr.push_back(to_string(c));
  return arr;
}

}  // namespace

KernelPoly build_kernel(const WalkForm& w, std::size_t order) {
  if (!w.C.empty()) throw ValidationError("kernel: excluded bottom labels are not supported");
  if (w.A.empty()) throw ValidationError("kernel: no forward jumps, the kernel is degenerate");
  const std::int64_t b = w.b;
  const Poly one_minus_u{1, -1};

  const Poly k0 = u_power(b) * one_minus_u;
  Poly sum_a, sum_b;
  for (auto alpha : w.A) sum_a = sum_a + u_power(alpha + b);
  for (auto beta : w.B) sum_b = sum_b + u_power(b - beta);
  const Poly k1 = u_power(b) - one_minus_u * sum_a + one_minus_u * sum_b;

  KernelPoly kp;
  kp.K = UPoly::from_z_slices({k0, k1}, std::max<std::size_t>(order, 2));
  kp.form = w;
  kp.p_a = static_cast<long>(std::count(w.A.begin(), w.A.end(), w.a));
  kp.p_0 = static_cast<long>(std::count(w.A.begin(), w.A.end(), 0));
  kp.order = order;
  return kp;
}

GFResult kernel_gfs(const KernelPoly& kp, std::size_t order) {
  if (kp.form.walk_axiom != 0) throw ValidationError("kernel: the walk must start at 0");
  if (order == 0) throw UsageError("kernel: order must be positive");
  const std::int64_t b = kp.form.b;
  const std::size_t m = order + 1;
  const UPoly K = UPoly::from_z_slices({kp.K.z_slice(0), kp.K.z_slice(1)}, m);

  GFResult r;
  const HenselFactor hf = hensel_small_factor(K, static_cast<int>(b), m);
  r.small = hf.small;

  if (b == 0) {
    r.unit_root = newton_series_root(K, Rat(1), m);
    // S = u - u_0
    for (std::size_t n = 0; n < m; ++n) {
      if (r.small.coeff(0)[n] != -(*r.unit_root)[n])
        throw ArithmeticError(ArithmeticError::Kind::lift_failure, "unit branch disagrees with the small factor");
    }
  }

  // -S/K slice by slice: K0 F_n = -S_n - K1 F_{n-1}.
  const Poly k0 = K.z_slice(0);
  const Poly k1 = K.z_slice(1);
  Poly prev;
  for (std::size_t n = 0; n < m; ++n) {
    Poly rhs = -r.small.z_slice(n) - k1 * prev;
    PolyDivision d = divmod(rhs, k0);
    if (!d.remainder.is_zero())
      throw ArithmeticError(ArithmeticError::Kind::lift_failure,
                            "-S/K is not a polynomial in u at z^" + std::to_string(n));
    for (const auto& c : d.quotient.coeffs())
      if (c < 0 || c.get_den() != 1)
        throw Error("kernel: coefficient " + to_string(c) + " of F at z^" + std::to_string(n) +
                    " is not a nonnegative integer");
    prev = d.quotient;
    r.Fu.push_back(d.quotient);
  }

  // -1/T, with T_0 = -1: F_n = sum_{i>=1} T_i F_{n-i}.
  {
    bool agrees = hf.cofactor.z_slice(0) == Poly{-1};
    std::vector<Poly> g{Poly{1}};
    for (std::size_t n = 1; n < m && agrees; ++n) {
      Poly acc;
      for (std::size_t i = 1; i <= n; ++i) acc = acc + hf.cofactor.z_slice(i) * g[n - i];
      agrees = acc == r.Fu[n];
      g.push_back(std::move(acc));
    }
    r.cofactor_agrees = agrees && r.Fu[0] == Poly{1};
  }

  r.F1 = (-r.small.eval(Rat(1))).shifted_down(1).truncated(order);
  std::vector<Rat> f0(order);
  for (std::size_t n = 0; n < order; ++n) f0[n] = r.Fu[n][0];
  r.F0 = Series(std::move(f0));

  // prod u_i = (-1)^(b+1) S(z,0)
  Series prod = r.small.coeff(0);
  if (b % 2 == 0) prod = -prod;
  if (prod[0] == 0) {
    Series candidate = prod.shifted_down(1);
    if (b % 2 == 1) candidate = -candidate;
    r.positive_b_formula = first_difference(candidate, r.F0) < 0;
  }
  {
    Series den = Series::from_poly(Poly{1, 1} - Poly::monomial(kp.p_0, 1), m);
    Series candidate = series_div(prod, den).truncated(order);
    r.zero_b_formula = first_difference(candidate, r.F0) < 0;
  }
  return r;
}

std::string gf_json(const KernelPoly& kp, const GFResult& r) {
  using nlohmann::json;
  const WalkForm& w = kp.form;
  json kernel = json::array();
  for (int j = 0; j <= kp.K.degree_u(); ++j) {
    json row = json::array();
    row.push_back(to_string(kp.K.coeff(j)[0]));
    row.push_back(to_string(kp.K.order() > 1 ? kp.K.coeff(j)[1] : Rat(0)));
    kernel.push_back(std::move(row));
  }
  json doc = {
      {"A", w.A},
      {"B", w.B},
      {"a", w.a},
      {"b", w.b},
      {"p_a", to_string(kp.p_a)},
      {"kernel_coefficients", std::move(kernel)},
      {"order", r.F1.order()},
      {"F_z_1", series_json(r.F1)},
      {"F_z_0", series_json(r.F0)},
      {"cofactor_agrees", r.cofactor_agrees},
      {"excursions",
       {{"positive_b_formula", r.positive_b_formula}, {"zero_b_formula", r.zero_b_formula}}},
  };
  if (r.unit_root) doc["unit_root"] = series_json(padded_to(*r.unit_root, r.F1.order()));
  return doc.dump(2) + "\n";
}

}  // namespace ecogen
