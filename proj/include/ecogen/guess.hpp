#pragma once

// Rational and algebraic reconstruction from series prefixes, checked on
// held-out terms.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ecogen/arith.hpp"

namespace ecogen {

struct RationalGuess {
  RationalFunction f;
  int num_degree = 0;
  int den_degree = 0;
  std::size_t fitted_terms = 0;    // p + q + 1
  std::size_t verified_terms = 0;  // all input terms, held-out ones included
};

// Smallest p/q (by deg p + deg q, then deg q) with p, q <= dmax that
// reproduces every term of s. Needs order(s) >= 2 dmax + holdout + 2.
std::optional<RationalGuess> guess_rational(const Series& s, int dmax, std::size_t holdout = 10);

/// Q(z, F) = sum_{i,j} coeffs[i][j] z^i F^j.
struct AlgebraicGuess {
  std::vector<std::vector<BigInt>> coeffs;  // (dz+1) x (dF+1)
  int dz = 0;
  int dF = 0;
  std::size_t verified_terms = 0;

  std::string to_string() const;
};

// Needs order(s) >= (dz+1)(dF+1) + holdout.
std::optional<AlgebraicGuess> guess_algebraic(const Series& s, int dz, int dF, std::size_t holdout = 10);

// True when Q(z, F(z)) vanishes through the known order of F.
bool annihilates(const AlgebraicGuess& q, const Series& f);

std::string guess_json(const std::optional<RationalGuess>& r, const std::optional<AlgebraicGuess>& a);

}  // namespace ecogen
