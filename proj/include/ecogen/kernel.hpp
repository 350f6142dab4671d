#pragma once

// Kernel method for factorial walks, and closed-form checks for the series
// it produces.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ecogen/arith.hpp"
#include "ecogen/classify.hpp"
#include "ecogen/guess.hpp"

namespace ecogen {

/// K(z,u) = u^b(1-u) + z u^b - z(1-u) sum_A u^(alpha+b) + z(1-u) sum_B u^(b-beta)
struct KernelPoly {
  UPoly K;
  WalkForm form;
  Rat p_a;  // multiplicity of the largest forward jump
  Rat p_0;  // multiplicity of the zero jump
  std::size_t order = 0;
};

// Requires C empty and a nonempty A. The walk may start anywhere; kernel_gfs
// needs it to start at 0.
KernelPoly build_kernel(const WalkForm& w, std::size_t order);

struct GFResult {
  UPoly small;               // S: monic, degree b+1, S(0,u) = u^b(u-1)
  std::optional<Series> unit_root;  // u_0 when b = 0
  Series F1;                 // F(z,1)
  Series F0;                 // F(z,0), read off -S/K
  std::vector<Poly> Fu;      // Fu[n] = [z^n] F(z,u)
  bool cofactor_agrees = false;  // -S/K equals -1/T
  // Which of the two printed excursion formulas reproduces F0.
  bool positive_b_formula = false;  // (-1)^b / z * prod u_i
  bool zero_b_formula = false;      // prod u_i / (1 + z - p_0 z)
};

// Series known to `order` terms. Throws when the walk does not start at 0.
GFResult kernel_gfs(const KernelPoly& kp, std::size_t order);

std::string gf_json(const KernelPoly& kp, const GFResult& r);

/// (P - Q sqrt(D)) / Den, D(0) a nonzero rational square.
struct SurdForm {
  Poly P;
  Poly Q;
  Poly D;
  Poly Den;

  Series expand(std::size_t order) const;
  std::string to_string() const;
};

/// Any other closed expression, given by its expansion.
struct SeriesForm {
  std::string text;
  std::function<Series(std::size_t)> expand;
};

using ClosedForm = std::variant<RationalFunction, SurdForm, AlgebraicGuess, SeriesForm>;

struct ClosedFormVerdict {
  bool match = false;
  std::ptrdiff_t first_difference = -1;  // -1 when everything agrees
  std::size_t terms = 0;
};

ClosedFormVerdict closed_form_check(const ClosedForm& form, const Series& f);
std::string closed_form_text(const ClosedForm& form);

}  // namespace ecogen
