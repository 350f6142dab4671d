#pragma once

// Exact arithmetic substrate: rationals, dense polynomials, truncated power
// series and polynomials in u whose coefficients are truncated series.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecogen/error.hpp"

namespace ecogen {

using BigInt = mpz_class;
using Rat = mpq_class;

Rat make_rat(const BigInt& num, const BigInt& den);
std::string to_string(const BigInt& x);
std::string to_string(const Rat& x);

/// Dense univariate polynomial over Q. Trailing zero coefficients are trimmed,
/// so the zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  Poly(std::initializer_list<long> coeffs);

  static Poly constant(const Rat& c);
  static Poly monomial(const Rat& c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  // Coefficient of x^i, zero beyond the degree.
  Rat operator[](int i) const;
  const Rat& leading() const { return coeffs_.back(); }

  Rat eval(const Rat& x) const;
  Poly derivative() const;
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rat& c, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);  // monic, or zero when both are zero

struct ExtendedGcd {
  Poly gcd;  // monic
  Poly s;    // s*a + t*b = gcd
  Poly t;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

/// Truncated formal power series: the first order() coefficients are known
/// exactly, everything from z^order() on is unknown.
class Series {
 public:
  Series() = default;
  explicit Series(std::size_t order);  // zero series known to the given order
  explicit Series(std::vector<Rat> coeffs);

  static Series constant(const Rat& c, std::size_t order);
  static Series from_ints(std::initializer_list<long> coeffs, std::size_t order);
  static Series from_poly(const Poly& p, std::size_t order);
  template <typename Int>
  static Series from_integers(std::span<const Int> values) {
    std::vector<Rat> c;
    c.reserve(values.size());
    for (const auto& v : values) c.emplace_back(v);
    return Series(std::move(c));
  }

  std::size_t order() const { return coeffs_.size(); }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& operator[](std::size_t i) const { return coeffs_[i]; }
  Rat& operator[](std::size_t i) { return coeffs_[i]; }

  // Index of the first nonzero coefficient; order() when all known terms vanish.
  std::size_t valuation() const;
  bool is_zero() const { return valuation() == order(); }

  Series truncated(std::size_t n) const;
  // Multiply by z^k; the known order grows by k.
  Series shifted_up(std::size_t k) const;
  // Divide by z^k; requires the first k coefficients to vanish.
  Series shifted_down(std::size_t k) const;
  Poly to_poly() const;
  // True when every known coefficient is an integer.
  bool has_integer_coeffs() const;
  std::vector<BigInt> integer_coeffs() const;

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator-(const Series& a);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Rat& c, const Series& a);
  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rat> coeffs_;
};

Series series_mul(const Series& a, const Series& b);
// Quotient a/b. Requires valuation(b) <= valuation(a); the result is known to
// order min(order(a), order(b)) - valuation(b).
Series series_div(const Series& a, const Series& b);
Series series_inverse(const Series& a);
// Square root with positive constant term; the constant term must be the
// square of a nonzero rational.
Series series_sqrt(const Series& a);
Series series_pow(const Series& a, unsigned e);
// Index of the first coefficient where a and b differ within their common order.
std::ptrdiff_t first_difference(const Series& a, const Series& b);

/// Polynomial in u whose coefficients are truncated series in z sharing one
/// order. coeff(j) holds the coefficient of u^j.
class UPoly {
 public:
  UPoly() = default;
  UPoly(std::vector<Series> coeffs, std::size_t order);

  // Builds a polynomial from its z-slices: slices[n] is the coefficient of z^n.
  static UPoly from_z_slices(const std::vector<Poly>& slices, std::size_t order);

  std::size_t order() const { return order_; }
  int degree_u() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Series& coeff(int j) const { return coeffs_[j]; }
  const std::vector<Series>& coeffs() const { return coeffs_; }

  // Coefficient of z^n as a polynomial in u.
  Poly z_slice(std::size_t n) const;
  Series eval(const Series& u) const;
  Series eval(const Rat& u) const;
  UPoly derivative_u() const;
  UPoly truncated(std::size_t order) const;

  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rat& c, const UPoly& a);

 private:
  void trim();
  std::vector<Series> coeffs_;
  std::size_t order_ = 0;
};

/// Sparse Laurent polynomial in u.
class LaurentU {
 public:
  LaurentU() = default;
  void add(int exponent, const Rat& c);
  const std::map<int, Rat>& terms() const { return terms_; }
  Rat operator[](int exponent) const;
  int min_exponent() const;
  int max_exponent() const;
  bool empty() const { return terms_.empty(); }

  friend LaurentU operator*(const LaurentU& a, const LaurentU& b);
  friend LaurentU operator+(const LaurentU& a, const LaurentU& b);
  friend LaurentU operator-(const LaurentU& a, const LaurentU& b);

 private:
  std::map<int, Rat> terms_;
};

// Simple root u(z) of K(z,u) with u(0) = seed, to order N.
Series newton_series_root(const UPoly& kernel, const Rat& seed, std::size_t order);

struct HenselFactor {
  UPoly small;     // monic of degree b+1, small(0,u) = u^b (u-1)
  UPoly cofactor;  // kernel = small * cofactor mod z^N
};

// Splits off the factor of K whose roots are the b+1 series finite at z = 0.
HenselFactor hensel_small_factor(const UPoly& kernel, int b, std::size_t order);

using RatMatrix = std::vector<std::vector<Rat>>;

// Unique solution of the square system m x = rhs; nullopt when m is singular.
std::optional<std::vector<Rat>> solve_linear(RatMatrix m, std::vector<Rat> rhs);
// Basis of {x : m x = 0} over Q; `cols` fixes the width when m has no rows.
std::vector<std::vector<Rat>> nullspace(RatMatrix m, std::size_t cols);
// Fraction-free (Bareiss) determinant of an integer matrix.
BigInt determinant(std::vector<std::vector<BigInt>> m);
// Polynomial through (xs[i], ys[i]); the xs must be distinct.
Poly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

/// num/den with den(0) = 1 and gcd(num, den) = 1.
struct RationalFunction {
  Poly num;
  Poly den;

  // Cancels the gcd and scales so den(0) = 1; den(0) must be nonzero.
  static RationalFunction reduced(const Poly& num, const Poly& den);
  Series expand(std::size_t order) const;
  std::string to_string() const;
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;
};

std::string to_string(const Poly& p, char var = 'z');

}  // namespace ecogen
