#ifndef KLPAR_INTS_HPP
#define KLPAR_INTS_HPP

#include <cstdint>
#include <string>
#include <utility>

#include <gmp.h>

namespace klp::num {

// Exact signed integer with an inline int64 fast path. Values that do not
// fit a machine word spill into a heap-allocated GMP limb vector; results
// are demoted back whenever they fit, so mixed arithmetic stays cheap.
class Int {
 public:
  Int() noexcept : v_(0), big_(nullptr) {}
  Int(long long v) noexcept : v_(v), big_(nullptr) {}
  Int(int v) noexcept : v_(v), big_(nullptr) {}
  Int(unsigned long long v);
  explicit Int(const std::string& decimal);

  Int(const Int& o);
  Int(Int&& o) noexcept : v_(o.v_), big_(o.big_) { o.big_ = nullptr; }
  Int& operator=(const Int& o);
  Int& operator=(Int&& o) noexcept;
  ~Int();

  bool is_zero() const noexcept { return big_ ? mpz_sgn(*big_) == 0 : v_ == 0; }
  int sign() const noexcept;
  bool fits_i64() const noexcept;
  long long as_i64() const;  // requires fits_i64()

  // |x| < 2^bit_length(); bit_length(0) == 0.
  size_t bit_length() const;
  std::string to_string() const;

  Int& operator+=(const Int& o);
  Int& operator-=(const Int& o);
  Int& operator*=(const Int& o);
  friend Int operator+(Int a, const Int& b) { a += b; return a; }
  friend Int operator-(Int a, const Int& b) { a -= b; return a; }
  friend Int operator*(Int a, const Int& b) { a *= b; return a; }
  Int operator-() const;

  friend bool operator==(const Int& a, const Int& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Int& a, const Int& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Int& a, const Int& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Int& a, const Int& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Int& a, const Int& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Int& a, const Int& b) { return cmp(a, b) >= 0; }

  static int cmp(const Int& a, const Int& b);
  static Int pow2(unsigned k);
  static Int gcd(const Int& a, const Int& b);

  // Exact quotient; the divisor must divide *this (checked in debug builds).
  Int divexact(const Int& d) const;

  // Nonnegative residue of *this modulo m (m >= 2).
  uint64_t mod_u64(uint64_t m) const;

  // Access to the GMP representation for callers that need it (tests,
  // rational arithmetic). Writes the value into rop.
  void get_mpz(mpz_t rop) const;
  static Int from_mpz(const mpz_t z);

 private:
  void promote();           // move v_ into a fresh big_
  void demote_if_small();   // shrink big_ back to v_ when possible
  bool small() const noexcept { return big_ == nullptr; }

  long long v_;
  mpz_t* big_;
};

}  // namespace klp::num

#endif
