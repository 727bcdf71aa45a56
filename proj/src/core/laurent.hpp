#ifndef KLPAR_LAURENT_HPP
#define KLPAR_LAURENT_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/ints.hpp"

namespace klp::laurent {

using num::Int;

// Coefficient domain: exact integers, or the residue ring Z/mZ with a
// machine-word modulus. Residues are kept canonical in [0, m).
struct CoefficientRing {
  enum class Kind : uint8_t { Exact, Residue };

  Kind kind = Kind::Exact;
  uint64_t modulus = 0;

  static CoefficientRing exact() { return {}; }
  static CoefficientRing residue(uint64_t m);

  bool is_exact() const { return kind == Kind::Exact; }
  bool operator==(const CoefficientRing&) const = default;

  Int add(const Int& a, const Int& b) const;
  Int sub(const Int& a, const Int& b) const;
  Int mul(const Int& a, const Int& b) const;
  Int neg(const Int& a) const;
  // Map an arbitrary exact integer into this ring.
  Int reduce(const Int& a) const;
};

// Sparse-in-spirit Laurent polynomial: a dense coefficient run starting at
// `valuation`, advancing by `step` (step 2 when the support has a single
// exponent parity). Canonical form: first/last coefficients nonzero, and
// step is 2 exactly when the support allows it, so operator== is plain
// representation equality. The zero polynomial is the empty run.
class LaurentPoly {
 public:
  LaurentPoly() : ring_(CoefficientRing::exact()) {}
  explicit LaurentPoly(CoefficientRing ring) : ring_(ring) {}

  static LaurentPoly zero(CoefficientRing ring) { return LaurentPoly(ring); }
  static LaurentPoly constant(Int c, CoefficientRing ring);
  static LaurentPoly monomial(Int c, int exponent, CoefficientRing ring);
  // Terms as (exponent, coefficient); exponents need not be sorted.
  static LaurentPoly from_terms(const std::vector<std::pair<int, Int>>& terms,
                                CoefficientRing ring);

  const CoefficientRing& ring() const { return ring_; }
  bool is_zero() const { return coeffs_.empty(); }
  int valuation() const { return valuation_; }
  int step() const { return step_; }
  int max_exponent() const;  // requires nonzero
  size_t coeff_count() const { return coeffs_.size(); }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  Int coefficient_at(int exponent) const;
  // Coefficient of v^0; rejects genuine Laurent polynomials (valuation < 0).
  Int absolute_term() const;
  bool is_in_vZv() const { return coeffs_.empty() || valuation_ >= 1; }
  Int mu() const { return coefficient_at(1); }

  LaurentPoly bar() const;

  struct SymParts {
    LaurentPoly f_minus;  // the negative part reflected into vZ[v]
    Int f0;               // absolute term
    LaurentPoly f_sym;    // f_minus(1/v) + f0 + f_minus(v)
  };
  SymParts sym_decompose() const;

  // Exact ring only; t = +-1 works for any valuation, other t require a
  // genuine polynomial (valuation >= 0).
  Int evaluate(long long t) const;

  // P(q) with P(v^2) = v^length_diff * f(1/v); coefficients of q^0, q^1, ...
  std::vector<Int> to_classical(unsigned length_diff) const;

  std::string to_string() const;

  void for_each_term(const std::function<void(int, const Int&)>& fn) const;

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;

  // c * v^a * f
  LaurentPoly mul_monomial(int a, const Int& c) const;
  LaurentPoly mul_scalar(const Int& c) const;
  // f * v^a
  LaurentPoly shifted(int a) const;

  bool operator==(const LaurentPoly& o) const {
    return ring_ == o.ring_ && valuation_ == o.valuation_ && step_ == o.step_ &&
           coeffs_ == o.coeffs_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  friend void accumulate(LaurentPoly& dst, const LaurentPoly& src, int shift,
                         const Int& scale);

 private:
  void normalize();
  static void check_same_ring(const LaurentPoly& a, const LaurentPoly& b);

  CoefficientRing ring_;
  int valuation_ = 0;
  int step_ = 2;
  std::vector<Int> coeffs_;
};

// dst += scale * v^shift * src, keeping dst canonical. The workhorse of the
// solver's accumulation loops; dst must own its storage (not shared).
void accumulate(LaurentPoly& dst, const LaurentPoly& src, int shift, const Int& scale);

// Chinese remainder reconstruction: residues are (value, modulus) pairs with
// 0 <= value < modulus and pairwise coprime moduli. Returns the unique
// integer in [0, prod moduli) matching all residues.
Int crt_combine(const std::vector<std::pair<uint64_t, uint64_t>>& residues);

}  // namespace klp::laurent

#endif
