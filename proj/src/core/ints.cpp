#include "core/ints.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace klp::num {

namespace {
mpz_t* alloc_mpz() {
  mpz_t* p = new mpz_t[1];
  mpz_init(*p);
  return p;
}
}  // namespace

Int::Int(unsigned long long v) : v_(0), big_(nullptr) {
  if (v <= static_cast<unsigned long long>(std::numeric_limits<long long>::max())) {
    v_ = static_cast<long long>(v);
  } else {
    big_ = alloc_mpz();
    mpz_import(*big_, 1, 1, sizeof(v), 0, 0, &v);
  }
}

Int::Int(const std::string& decimal) : v_(0), big_(nullptr) {
  big_ = alloc_mpz();
  if (mpz_set_str(*big_, decimal.c_str(), 10) != 0) {
    mpz_clear(*big_);
    delete[] big_;
    big_ = nullptr;
    throw std::invalid_argument("Int: bad decimal string '" + decimal + "'");
  }
  demote_if_small();
}

Int::Int(const Int& o) : v_(o.v_), big_(nullptr) {
  if (o.big_) {
    big_ = alloc_mpz();
    mpz_set(*big_, *o.big_);
  }
}

Int& Int::operator=(const Int& o) {
  if (this == &o) return *this;
  if (o.big_) {
    if (!big_) big_ = alloc_mpz();
    mpz_set(*big_, *o.big_);
  } else {
    if (big_) {
      mpz_clear(*big_);
      delete[] big_;
      big_ = nullptr;
    }
    v_ = o.v_;
  }
  return *this;
}

Int& Int::operator=(Int&& o) noexcept {
  if (this == &o) return *this;
  if (big_) {
    mpz_clear(*big_);
    delete[] big_;
  }
  v_ = o.v_;
  big_ = o.big_;
  o.big_ = nullptr;
  return *this;
}

Int::~Int() {
  if (big_) {
    mpz_clear(*big_);
    delete[] big_;
  }
}

int Int::sign() const noexcept {
  if (big_) return mpz_sgn(*big_);
  return v_ > 0 ? 1 : (v_ < 0 ? -1 : 0);
}

bool Int::fits_i64() const noexcept {
  if (!big_) return true;
  if (!mpz_fits_slong_p(*big_)) return false;
  return true;
}

long long Int::as_i64() const {
  if (!big_) return v_;
  assert(mpz_fits_slong_p(*big_));
  return mpz_get_si(*big_);
}

size_t Int::bit_length() const {
  if (big_) return mpz_sgn(*big_) == 0 ? 0 : mpz_sizeinbase(*big_, 2);
  if (v_ == 0) return 0;
  unsigned long long a = v_ < 0 ? -static_cast<unsigned long long>(v_)
                                : static_cast<unsigned long long>(v_);
  return 64 - static_cast<size_t>(__builtin_clzll(a));
}

std::string Int::to_string() const {
  if (!big_) return std::to_string(v_);
  char* s = mpz_get_str(nullptr, 10, *big_);
  std::string out(s);
  void (*freefn)(void*, size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(s, out.size() + 1);
  return out;
}

void Int::promote() {
  assert(!big_);
  big_ = alloc_mpz();
  mpz_set_si(*big_, v_);
}

void Int::demote_if_small() {
  if (big_ && mpz_fits_slong_p(*big_)) {
    v_ = mpz_get_si(*big_);
    mpz_clear(*big_);
    delete[] big_;
    big_ = nullptr;
  }
}

Int& Int::operator+=(const Int& o) {
  if (small() && o.small()) {
    long long r;
    if (!__builtin_add_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  if (small()) promote();
  if (o.small()) {
    if (o.v_ >= 0)
      mpz_add_ui(*big_, *big_, static_cast<unsigned long long>(o.v_));
    else
      mpz_sub_ui(*big_, *big_, -static_cast<unsigned long long>(o.v_));
  } else {
    mpz_add(*big_, *big_, *o.big_);
  }
  demote_if_small();
  return *this;
}

Int& Int::operator-=(const Int& o) {
  if (small() && o.small()) {
    long long r;
    if (!__builtin_sub_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  if (small()) promote();
  if (o.small()) {
    if (o.v_ >= 0)
      mpz_sub_ui(*big_, *big_, static_cast<unsigned long long>(o.v_));
    else
      mpz_add_ui(*big_, *big_, -static_cast<unsigned long long>(o.v_));
  } else {
    mpz_sub(*big_, *big_, *o.big_);
  }
  demote_if_small();
  return *this;
}

Int& Int::operator*=(const Int& o) {
  if (small() && o.small()) {
    long long r;
    if (!__builtin_mul_overflow(v_, o.v_, &r)) {
      v_ = r;
      return *this;
    }
  }
  if (small()) promote();
  if (o.small())
    mpz_mul_si(*big_, *big_, o.v_);
  else
    mpz_mul(*big_, *big_, *o.big_);
  demote_if_small();
  return *this;
}

Int Int::operator-() const {
  if (small()) {
    if (v_ != std::numeric_limits<long long>::min()) return Int(-v_);
  }
  Int r(*this);
  if (r.small()) r.promote();
  mpz_neg(*r.big_, *r.big_);
  r.demote_if_small();
  return r;
}

int Int::cmp(const Int& a, const Int& b) {
  if (a.small() && b.small()) return a.v_ < b.v_ ? -1 : (a.v_ > b.v_ ? 1 : 0);
  if (!a.small() && !b.small()) return mpz_cmp(*a.big_, *b.big_);
  if (!a.small()) return mpz_cmp_si(*a.big_, b.v_);
  return -mpz_cmp_si(*b.big_, a.v_);
}

Int Int::pow2(unsigned k) {
  if (k < 63) return Int(1LL << k);
  Int r;
  r.promote();
  mpz_ui_pow_ui(*r.big_, 2, k);
  return r;
}

Int Int::gcd(const Int& a, const Int& b) {
  mpz_t x, y;
  mpz_init(x);
  mpz_init(y);
  a.get_mpz(x);
  b.get_mpz(y);
  Int r;
  r.promote();
  mpz_gcd(*r.big_, x, y);
  mpz_clear(x);
  mpz_clear(y);
  r.demote_if_small();
  return r;
}

Int Int::divexact(const Int& d) const {
  if (d.is_zero()) throw std::domain_error("Int::divexact: zero divisor");
  if (small() && d.small()) {
    assert(v_ % d.v_ == 0);
    return Int(v_ / d.v_);
  }
  mpz_t a, b;
  mpz_init(a);
  mpz_init(b);
  get_mpz(a);
  d.get_mpz(b);
  assert(mpz_divisible_p(a, b));
  Int r;
  r.promote();
  mpz_divexact(*r.big_, a, b);
  mpz_clear(a);
  mpz_clear(b);
  r.demote_if_small();
  return r;
}

uint64_t Int::mod_u64(uint64_t m) const {
  assert(m >= 2);
  if (small()) {
    long long v = v_ % static_cast<long long>(m);
    if (v < 0) v += static_cast<long long>(m);
    return static_cast<uint64_t>(v);
  }
  mpz_t mm, r;
  mpz_init(r);
  mpz_init_set_ui(mm, m);
  mpz_mod(r, *big_, mm);
  uint64_t out = mpz_get_ui(r);
  mpz_clear(r);
  mpz_clear(mm);
  return out;
}

void Int::get_mpz(mpz_t rop) const {
  if (big_)
    mpz_set(rop, *big_);
  else
    mpz_set_si(rop, v_);
}

Int Int::from_mpz(const mpz_t z) {
  Int r;
  r.promote();
  mpz_set(*r.big_, z);
  r.demote_if_small();
  return r;
}

}  // namespace klp::num
