#include "ecogen/guess.hpp"

#include <algorithm>

#include "json.hpp"

namespace ecogen {

namespace {

Rat coeff_or_zero(const Series& s, std::ptrdiff_t n) {
  return n < 0 ? Rat(0) : s[static_cast<std::size_t>(n)];
}

// Fits p/q with q(0) = 1 to the first p + q + 1 terms.
std::optional<RationalFunction> pade(const Series& s, int p, int q) {
  std::vector<Rat> qc{Rat(1)};
  if (q > 0) {
    RatMatrix m(static_cast<std::size_t>(q), std::vector<Rat>(static_cast<std::size_t>(q)));
    std::vector<Rat> rhs(static_cast<std::size_t>(q));
    for (int e = 0; e < q; ++e) {
      const int n = p + 1 + e;
      for (int j = 1; j <= q; ++j) m[static_cast<std::size_t>(e)][static_cast<std::size_t>(j - 1)] = coeff_or_zero(s, n - j);
      rhs[static_cast<std::size_t>(e)] = -s[static_cast<std::size_t>(n)];
    }
    auto x = solve_linear(std::move(m), std::move(rhs));
    if (!x) return std::nullopt;
    qc.insert(qc.end(), x->begin(), x->end());
  }
  std::vector<Rat> pc(static_cast<std::size_t>(p) + 1);
  for (int n = 0; n <= p; ++n)
    for (int j = 0; j <= std::min(n, q); ++j) pc[static_cast<std::size_t>(n)] += qc[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(n - j)];
  return RationalFunction::reduced(Poly(pc), Poly(qc));
}

struct Monomial {
  int i;  // power of z
  int j;  // power of F
};

// Graded order: by total degree, then by the power of F.
bool graded_less(const Monomial& x, const Monomial& y) {
  if (x.i + x.j != y.i + y.j) return x.i + x.j < y.i + y.j;
  return x.j < y.j;
}

std::vector<Series> powers(const Series& f, int dF) {
  std::vector<Series> pw{Series::constant(1, f.order())};
  for (int j = 1; j <= dF; ++j) pw.push_back(pw.back() * f);
  return pw;
}

Rat evaluate_term(const std::vector<Series>& pw, const Monomial& mo, std::size_t n) {
  if (n < static_cast<std::size_t>(mo.i)) return 0;
  return pw[static_cast<std::size_t>(mo.j)][n - static_cast<std::size_t>(mo.i)];
}

}  // namespace

std::optional<RationalGuess> guess_rational(const Series& s, int dmax, std::size_t holdout) {
  const std::size_t need = 2 * static_cast<std::size_t>(dmax) + holdout + 2;
  if (dmax < 0 || s.order() < need)
    throw ArithmeticError(ArithmeticError::Kind::insufficient_terms,
                          "guess_rational needs " + std::to_string(need) + " terms, got " + std::to_string(s.order()));
  for (int d = 0; d <= 2 * dmax; ++d) {
    for (int q = 0; q <= std::min(d, dmax); ++q) {
      const int p = d - q;
      if (p > dmax) continue;
      auto f = pade(s, p, q);
      if (!f) continue;
      if (f->expand(s.order()) != s) continue;
      RationalGuess g;
      g.f = std::move(*f);
      g.num_degree = std::max(0, g.f.num.degree());
      g.den_degree = g.f.den.degree();
      g.fitted_terms = static_cast<std::size_t>(p + q + 1);
      g.verified_terms = s.order();
      return g;
    }
  }
  return std::nullopt;
}

std::optional<AlgebraicGuess> guess_algebraic(const Series& s, int dz, int dF, std::size_t holdout) {
  const std::size_t unknowns = static_cast<std::size_t>(dz + 1) * static_cast<std::size_t>(dF + 1);
  if (dz < 0 || dF < 1 || s.order() < unknowns + holdout)
    throw ArithmeticError(ArithmeticError::Kind::insufficient_terms,
                          "guess_algebraic needs " + std::to_string(unknowns + holdout) + " terms, got " +
                              std::to_string(s.order()));
  // Columns in descending graded order, so reduction favours low monomials.
  std::vector<Monomial> cols;
  for (int i = 0; i <= dz; ++i)
    for (int j = 0; j <= dF; ++j) cols.push_back({i, j});
  std::sort(cols.begin(), cols.end(), [](const Monomial& x, const Monomial& y) { return graded_less(y, x); });

  const auto pw = powers(s, dF);
  const std::size_t eqs = s.order() - holdout;
  RatMatrix m(eqs, std::vector<Rat>(cols.size()));
  for (std::size_t n = 0; n < eqs; ++n)
    for (std::size_t c = 0; c < cols.size(); ++c) m[n][c] = evaluate_term(pw, cols[c], n);
  auto basis = nullspace(std::move(m), cols.size());
  if (basis.empty()) return std::nullopt;

  // The basis element whose largest monomial is smallest.
  std::vector<Rat> best;
  {
    RatMatrix b = basis;
    // Row-reduce the basis; the last row leads with the latest column.
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols.size() && row < b.size(); ++c) {
      std::size_t p = row;
      while (p < b.size() && b[p][c] == 0) ++p;
      if (p == b.size()) continue;
      std::swap(b[p], b[row]);
      for (std::size_t r = row + 1; r < b.size(); ++r) {
        if (b[r][c] == 0) continue;
        const Rat f = b[r][c] / b[row][c];
        for (std::size_t j = c; j < cols.size(); ++j) b[r][j] -= f * b[row][j];
      }
      ++row;
    }
    best = b[row - 1];
  }

  // Content-free integers, positive leading coefficient.
  BigInt den = 1, content = 0;
  for (const auto& x : best)
    if (x != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<BigInt> ints(best.size());
  for (std::size_t c = 0; c < best.size(); ++c) {
    Rat v = best[c] * den;
    ints[c] = v.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints[c].get_mpz_t());
  }
  std::size_t lead = 0;
  while (ints[lead] == 0) ++lead;
  if (ints[lead] < 0) content = -content;

  AlgebraicGuess g;
  g.dz = dz;
  g.dF = dF;
  g.coeffs.assign(static_cast<std::size_t>(dz) + 1, std::vector<BigInt>(static_cast<std::size_t>(dF) + 1));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    BigInt v = ints[c] / content;
    g.coeffs[static_cast<std::size_t>(cols[c].i)][static_cast<std::size_t>(cols[c].j)] = v;
  }
  if (!annihilates(g, s)) return std::nullopt;
  g.verified_terms = s.order();
  return g;
}

bool annihilates(const AlgebraicGuess& q, const Series& f) {
  const auto pw = powers(f, q.dF);
  for (std::size_t n = 0; n < f.order(); ++n) {
    Rat acc = 0;
    for (int i = 0; i <= q.dz; ++i)
      for (int j = 0; j <= q.dF; ++j) {
        const BigInt& c = q.coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (c != 0) acc += c * evaluate_term(pw, {i, j}, n);
      }
    if (acc != 0) return false;
  }
  return true;
}

std::string AlgebraicGuess::to_string() const {
  std::vector<Monomial> mons;
  for (int i = 0; i <= dz; ++i)
    for (int j = 0; j <= dF; ++j)
      if (coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) mons.push_back({i, j});
  std::sort(mons.begin(), mons.end(), [](const Monomial& x, const Monomial& y) { return graded_less(y, x); });
  std::string s;
  for (const auto& mo : mons) {
    BigInt c = coeffs[static_cast<std::size_t>(mo.i)][static_cast<std::size_t>(mo.j)];
    const bool neg = c < 0;
    if (neg) c = -c;
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    if (mo.i > 0) mono += mo.i == 1 ? "z" : "z^" + std::to_string(mo.i);
    if (mo.j > 0) mono += (mono.empty() ? "" : "*") + std::string(mo.j == 1 ? "F" : "F^" + std::to_string(mo.j));
    if (mono.empty())
      s += c.get_str();
    else if (c == 1)
      s += mono;
    else
      s += c.get_str() + "*" + mono;
  }
  return s.empty() ? "0" : s;
}

std::string guess_json(const std::optional<RationalGuess>& r, const std::optional<AlgebraicGuess>& a) {
  using nlohmann::json;
  auto poly_json = [](const Poly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
    return arr;
  };
  json doc = json::object();
  if (r) {
    doc["rational"] = {{"numerator", poly_json(r->f.num)},
                       {"denominator", poly_json(r->f.den)},
                       {"num_degree", r->num_degree},
                       {"den_degree", r->den_degree},
                       {"closed_form", r->f.to_string()},
                       {"fitted_terms", r->fitted_terms},
                       {"verified_terms", r->verified_terms}};
  } else {
    doc["rational"] = nullptr;
  }
  if (a) {
    json grid = json::array();
    for (const auto& row : a->coeffs) {
      json jr = json::array();
      for (const auto& c : row) jr.push_back(c.get_str());
      grid.push_back(std::move(jr));
    }
    doc["algebraic"] = {{"dz", a->dz},
                        {"dF", a->dF},
                        {"coefficients", std::move(grid)},
                        {"equation", a->to_string() + " = 0"},
                        {"verified_terms", a->verified_terms}};
  } else {
    doc["algebraic"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace ecogen
