#include "ecogen/arith.hpp"

#include <algorithm>
#include <limits>

namespace ecogen {

Rat make_rat(const BigInt& num, const BigInt& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const Rat& x) { return x.get_str(); }

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::monomial(const Rat& c, int degree) {
  std::vector<Rat> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat Poly::operator[](int i) const {
  if (i < 0 || i > degree()) return Rat(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat lc = leading();
  std::vector<Rat> v = coeffs_;
  for (auto& c : v) c /= lc;
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a) {
  std::vector<Rat> v = a.coeffs_;
  for (auto& c : v) c = -c;
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(v));
}

Poly operator*(const Rat& c, const Poly& a) {
  std::vector<Rat> v = a.coeffs_;
  for (auto& x : v) x *= c;
  return Poly(std::move(v));
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw ArithmeticError(ArithmeticError::Kind::singular_system, "polynomial division by zero");
  std::vector<Rat> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {Poly(), a};
  std::vector<Rat> quot(static_cast<std::size_t>(da - db) + 1);
  for (int i = da; i >= db; --i) {
    const Rat& lead = rem[static_cast<std::size_t>(i)];
    if (lead == 0) continue;
    Rat q = lead / b.leading();
    quot[static_cast<std::size_t>(i - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= q * b[j];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(1), s1;
  Poly t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    PolyDivision d = divmod(r0, r1);
    Poly r2 = d.remainder;
    Poly s2 = s0 - d.quotient * s1;
    Poly t2 = t0 - d.quotient * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {Poly(), Poly(), Poly()};
  Rat inv = 1 / r0.leading();
  return {inv * r0, inv * s0, inv * t0};
}

// ---------------------------------------------------------------- Series

Series::Series(std::size_t order) : coeffs_(order) {}

Series::Series(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {}

Series Series::constant(const Rat& c, std::size_t order) {
  Series s(order);
  if (order > 0) s.coeffs_[0] = c;
  return s;
}

Series Series::from_ints(std::initializer_list<long> coeffs, std::size_t order) {
  Series s(order);
  std::size_t i = 0;
  for (long c : coeffs) {
    if (i >= order) break;
    s.coeffs_[i++] = c;
  }
  return s;
}

Series Series::from_poly(const Poly& p, std::size_t order) {
  Series s(order);
  for (std::size_t i = 0; i < order && static_cast<int>(i) <= p.degree(); ++i) s.coeffs_[i] = p[static_cast<int>(i)];
  return s;
}

std::size_t Series::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return i;
  return coeffs_.size();
}

Series Series::truncated(std::size_t n) const {
  n = std::min(n, order());
  return Series(std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Series Series::shifted_up(std::size_t k) const {
  std::vector<Rat> v(k);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return Series(std::move(v));
}

Series Series::shifted_down(std::size_t k) const {
  if (k > order() || valuation() < k)
    throw ArithmeticError(ArithmeticError::Kind::division_by_higher_valuation,
                          "cannot divide by z^" + std::to_string(k) + ": lower coefficients are nonzero");
  return Series(std::vector<Rat>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
}

Poly Series::to_poly() const { return Poly(coeffs_); }

bool Series::has_integer_coeffs() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c.get_den() == 1; });
}

std::vector<BigInt> Series::integer_coeffs() const {
  std::vector<BigInt> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    if (c.get_den() != 1) throw ArithmeticError(ArithmeticError::Kind::singular_system, "non-integer coefficient " + c.get_str());
    out.push_back(c.get_num());
  }
  return out;
}

Series operator+(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.order(), b.order());
  Series r(n);
  for (std::size_t i = 0; i < n; ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return r;
}

Series operator-(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.order(), b.order());
  Series r(n);
  for (std::size_t i = 0; i < n; ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
  return r;
}

Series operator-(const Series& a) {
  Series r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Series operator*(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.order(), b.order());
  Series r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b.coeffs_[j] == 0) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return r;
}

Series operator*(const Rat& c, const Series& a) {
  Series r = a;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

Series series_mul(const Series& a, const Series& b) { return a * b; }

Series series_div(const Series& a, const Series& b) {
  const std::size_t vb = b.valuation();
  if (vb == b.order())
    throw ArithmeticError(ArithmeticError::Kind::division_by_higher_valuation, "division by a series that vanishes to its order");
  const std::size_t va = a.valuation();
  if (va < vb)
    throw ArithmeticError(ArithmeticError::Kind::division_by_higher_valuation,
                          "dividend valuation " + std::to_string(va) + " below divisor valuation " + std::to_string(vb));
  const std::size_t n = std::min(a.order(), b.order()) - vb;
  Series num = a.shifted_down(vb).truncated(n);
  Series den = b.shifted_down(vb).truncated(n);
  Series q(n);
  const Rat inv0 = 1 / den[0];
  for (std::size_t k = 0; k < n; ++k) {
    Rat acc = num[k];
    for (std::size_t i = 1; i <= k; ++i)
      if (den[i] != 0) acc -= den[i] * q[k - i];
    q[k] = acc * inv0;
  }
  return q;
}

Series series_inverse(const Series& a) { return series_div(Series::constant(1, a.order()), a); }

Series series_sqrt(const Series& a) {
  if (a.order() == 0) return a;
  const Rat& c0 = a[0];
  if (c0 <= 0 || mpz_perfect_square_p(c0.get_num_mpz_t()) == 0 || mpz_perfect_square_p(c0.get_den_mpz_t()) == 0)
    throw ArithmeticError(ArithmeticError::Kind::non_square_constant, "constant term " + c0.get_str() + " is not a nonzero rational square");
  const std::size_t n = a.order();
  Series s(n);
  s[0] = make_rat(sqrt(c0.get_num()), sqrt(c0.get_den()));
  const Rat inv = 1 / (2 * s[0]);
  for (std::size_t k = 1; k < n; ++k) {
    Rat acc = a[k];
    for (std::size_t i = 1; i < k; ++i) acc -= s[i] * s[k - i];
    s[k] = acc * inv;
  }
  return s;
}

Series series_pow(const Series& a, unsigned e) {
  Series result = Series::constant(1, a.order());
  Series base = a;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::ptrdiff_t first_difference(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.order(), b.order());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<Series> coeffs, std::size_t order) : coeffs_(std::move(coeffs)), order_(order) {
  for (auto& c : coeffs_) {
    if (c.order() < order_) {
      std::vector<Rat> v = c.coeffs();
      v.resize(order_);
      c = Series(std::move(v));
    } else {
      c = c.truncated(order_);
    }
  }
  trim();
}

UPoly UPoly::from_z_slices(const std::vector<Poly>& slices, std::size_t order) {
  int deg = -1;
  for (const auto& p : slices) deg = std::max(deg, p.degree());
  std::vector<Series> coeffs(static_cast<std::size_t>(deg + 1), Series(order));
  for (std::size_t n = 0; n < std::min(order, slices.size()); ++n)
    for (int j = 0; j <= slices[n].degree(); ++j) coeffs[static_cast<std::size_t>(j)][n] = slices[n][j];
  return UPoly(std::move(coeffs), order);
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly UPoly::z_slice(std::size_t n) const {
  std::vector<Rat> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(n < c.order() ? c[n] : Rat(0));
  return Poly(std::move(v));
}

Series UPoly::eval(const Series& u) const {
  const std::size_t n = std::min(order_, u.order());
  if (coeffs_.empty()) return Series(n);
  Series acc = coeffs_.back().truncated(n);
  for (int j = degree_u() - 1; j >= 0; --j) acc = acc * u + coeffs_[static_cast<std::size_t>(j)];
  return acc.truncated(n);
}

Series UPoly::eval(const Rat& u) const {
  Series acc(order_);
  for (int j = degree_u(); j >= 0; --j) acc = u * acc + coeffs_[static_cast<std::size_t>(j)];
  return acc;
}

UPoly UPoly::derivative_u() const {
  std::vector<Series> d;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d.push_back(Rat(static_cast<long>(j)) * coeffs_[j]);
  return UPoly(std::move(d), order_);
}

UPoly UPoly::truncated(std::size_t order) const {
  order = std::min(order, order_);
  std::vector<Series> c;
  for (const auto& s : coeffs_) c.push_back(s.truncated(order));
  return UPoly(std::move(c), order);
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  const std::size_t n = std::min(a.order_, b.order_);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return UPoly({}, n);
  std::vector<Series> c(a.coeffs_.size() + b.coeffs_.size() - 1, Series(n));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
  return UPoly(std::move(c), n);
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  const std::size_t n = std::min(a.order_, b.order_);
  std::vector<Series> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Series(n));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = c[i] + a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] - b.coeffs_[i];
  return UPoly(std::move(c), n);
}

UPoly operator*(const Rat& c, const UPoly& a) {
  std::vector<Series> v;
  for (const auto& s : a.coeffs_) v.push_back(c * s);
  return UPoly(std::move(v), a.order_);
}

// ---------------------------------------------------------------- LaurentU

void LaurentU::add(int exponent, const Rat& c) {
  Rat& slot = terms_[exponent];
  slot += c;
  if (slot == 0) terms_.erase(exponent);
}

Rat LaurentU::operator[](int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rat(0) : it->second;
}

int LaurentU::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }

int LaurentU::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

LaurentU operator*(const LaurentU& a, const LaurentU& b) {
  LaurentU r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add(ea + eb, ca * cb);
  return r;
}

LaurentU operator+(const LaurentU& a, const LaurentU& b) {
  LaurentU r = a;
  for (const auto& [e, c] : b.terms_) r.add(e, c);
  return r;
}

LaurentU operator-(const LaurentU& a, const LaurentU& b) {
  LaurentU r = a;
  for (const auto& [e, c] : b.terms_) r.add(e, -c);
  return r;
}

// ---------------------------------------------------------------- roots

namespace {

Series padded(const Series& s, std::size_t n) {
  std::vector<Rat> v = s.coeffs();
  v.resize(n);
  return Series(std::move(v));
}

}  // namespace

Series newton_series_root(const UPoly& kernel, const Rat& seed, std::size_t order) {
  if (order == 0) return Series();
  const UPoly k1 = kernel.truncated(1);
  if (k1.eval(seed)[0] != 0)
    throw ArithmeticError(ArithmeticError::Kind::singular_root, "seed " + seed.get_str() + " is not a root of K(0,u)");
  const UPoly dk = kernel.derivative_u();
  if (dk.truncated(1).eval(seed)[0] == 0)
    throw ArithmeticError(ArithmeticError::Kind::singular_root, "dK/du vanishes at the seed");

  Series u = Series::constant(seed, 1);
  std::size_t prec = 1;
  while (prec < order) {
    prec = std::min(2 * prec, order);
    const Series up = padded(u, prec);
    const Series num = kernel.truncated(prec).eval(up);
    const Series den = dk.truncated(prec).eval(up);
    u = up - series_div(num, den);
  }
  if (!kernel.eval(u).is_zero())
    throw ArithmeticError(ArithmeticError::Kind::singular_root, "Newton iteration failed final substitution check");
  return u;
}

HenselFactor hensel_small_factor(const UPoly& kernel, int b, std::size_t order) {
  if (b < 0) throw ArithmeticError(ArithmeticError::Kind::lift_failure, "b must be nonnegative");
  // S0 = u^b (u - 1)
  std::vector<Rat> s0c(static_cast<std::size_t>(b) + 2);
  s0c[static_cast<std::size_t>(b)] = -1;
  s0c[static_cast<std::size_t>(b) + 1] = 1;
  const Poly s0(std::move(s0c));

  const Poly k0 = kernel.z_slice(0);
  PolyDivision split = divmod(k0, s0);
  if (!split.remainder.is_zero())
    throw ArithmeticError(ArithmeticError::Kind::lift_failure, "K(0,u) is not divisible by u^b(u-1)");
  const Poly t0 = split.quotient;
  const ExtendedGcd eg = extended_gcd(s0, t0);
  if (eg.gcd.degree() != 0)
    throw ArithmeticError(ArithmeticError::Kind::lift_failure, "u^b(u-1) and its cofactor share a root at z = 0");

  std::vector<Poly> s_slices{s0};
  std::vector<Poly> t_slices{t0};
  for (std::size_t n = 1; n < order; ++n) {
    Poly e = kernel.z_slice(n);
    for (std::size_t i = 1; i < n; ++i) e = e - s_slices[i] * t_slices[n - i];
    Poly sn = divmod(e * eg.t, s0).remainder;
    PolyDivision tn = divmod(e - t0 * sn, s0);
    if (!tn.remainder.is_zero())
      throw ArithmeticError(ArithmeticError::Kind::lift_failure, "inexact cofactor division at z^" + std::to_string(n));
    s_slices.push_back(std::move(sn));
    t_slices.push_back(std::move(tn.quotient));
  }
  return {UPoly::from_z_slices(s_slices, order), UPoly::from_z_slices(t_slices, order)};
}

// ---------------------------------------------------------------- linear algebra

namespace {

// Row-reduces m in place; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(RatMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rat inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rat f = m[r][c];
      for (std::size_t j = c; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Rat>> solve_linear(RatMatrix m, std::vector<Rat> rhs) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  const auto pivots = rref(m, n);
  if (pivots.size() < n) return std::nullopt;
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

std::vector<std::vector<Rat>> nullspace(RatMatrix m, std::size_t cols) {
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(t);
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Poly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<Rat> d = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) d[i] = (d[i] - d[i - 1]) / (xs[i] - xs[i - j]);
  Poly p;
  for (std::size_t i = n; i-- > 0;) p = p * Poly(std::vector<Rat>{-xs[i], Rat(1)}) + Poly::constant(d[i]);
  return p;
}

// ---------------------------------------------------------------- rational functions

RationalFunction RationalFunction::reduced(const Poly& num, const Poly& den) {
  if (den[0] == 0) throw ArithmeticError(ArithmeticError::Kind::singular_system, "denominator vanishes at z = 0");
  Poly g = poly_gcd(num, den);
  Poly n = num, d = den;
  if (g.degree() > 0) {
    n = divmod(num, g).quotient;
    d = divmod(den, g).quotient;
  }
  const Rat scale = 1 / d[0];
  return {scale * n, scale * d};
}

Series RationalFunction::expand(std::size_t order) const {
  return series_div(Series::from_poly(num, order), Series::from_poly(den, order));
}

std::string to_string(const Poly& p, char var) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = 0; i <= p.degree(); ++i) {
    const Rat& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rat mag = neg ? Rat(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    const bool unit = mag == 1 && i > 0;
    if (!unit) s += mag.get_str();
    if (i > 0) {
      if (!unit) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::string RationalFunction::to_string() const {
  return "(" + ecogen::to_string(num) + ")/(" + ecogen::to_string(den) + ")";
}

}  // namespace ecogen
