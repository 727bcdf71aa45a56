#include "core/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

namespace klp::laurent {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t invmod_u64(uint64_t a, uint64_t m) {
  // extended Euclid; requires gcd(a, m) == 1
  int64_t t = 0, new_t = 1;
  int64_t r = static_cast<int64_t>(m), new_r = static_cast<int64_t>(a % m);
  while (new_r != 0) {
    int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw ValidationError("invmod: arguments not coprime");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

}  // namespace

CoefficientRing CoefficientRing::residue(uint64_t m) {
  if (m < 2) throw ValidationError("residue ring: modulus must be >= 2");
  if (m >= (1ULL << 63))
    throw ValidationError("residue ring: modulus must fit a signed machine word");
  CoefficientRing r;
  r.kind = Kind::Residue;
  r.modulus = m;
  return r;
}

Int CoefficientRing::add(const Int& a, const Int& b) const {
  if (is_exact()) return a + b;
  uint64_t x = static_cast<uint64_t>(a.as_i64()) + static_cast<uint64_t>(b.as_i64());
  if (x >= modulus) x -= modulus;
  return Int(static_cast<long long>(x));
}

Int CoefficientRing::sub(const Int& a, const Int& b) const {
  if (is_exact()) return a - b;
  uint64_t x = static_cast<uint64_t>(a.as_i64()) + modulus - static_cast<uint64_t>(b.as_i64());
  if (x >= modulus) x -= modulus;
  return Int(static_cast<long long>(x));
}

Int CoefficientRing::mul(const Int& a, const Int& b) const {
  if (is_exact()) return a * b;
  return Int(static_cast<long long>(mulmod_u64(
      static_cast<uint64_t>(a.as_i64()), static_cast<uint64_t>(b.as_i64()), modulus)));
}

Int CoefficientRing::neg(const Int& a) const {
  if (is_exact()) return -a;
  uint64_t x = static_cast<uint64_t>(a.as_i64());
  return Int(static_cast<long long>(x == 0 ? 0 : modulus - x));
}

Int CoefficientRing::reduce(const Int& a) const {
  if (is_exact()) return a;
  return Int(static_cast<long long>(a.mod_u64(modulus)));
}

LaurentPoly LaurentPoly::constant(Int c, CoefficientRing ring) {
  return monomial(std::move(c), 0, ring);
}

LaurentPoly LaurentPoly::monomial(Int c, int exponent, CoefficientRing ring) {
  LaurentPoly p(ring);
  c = ring.reduce(c);
  if (!c.is_zero()) {
    p.valuation_ = exponent;
    p.step_ = 2;
    p.coeffs_.push_back(std::move(c));
  }
  return p;
}

LaurentPoly LaurentPoly::from_terms(const std::vector<std::pair<int, Int>>& terms,
                                    CoefficientRing ring) {
  LaurentPoly p(ring);
  if (terms.empty()) return p;
  std::map<int, Int> acc;
  for (const auto& [e, c] : terms) {
    auto it = acc.find(e);
    if (it == acc.end())
      acc.emplace(e, ring.reduce(c));
    else
      it->second = ring.add(it->second, ring.reduce(c));
  }
  if (acc.empty()) return p;
  int lo = acc.begin()->first;
  int hi = acc.rbegin()->first;
  p.valuation_ = lo;
  p.step_ = 1;
  p.coeffs_.assign(static_cast<size_t>(hi - lo) + 1, Int(0));
  for (auto& [e, c] : acc) p.coeffs_[static_cast<size_t>(e - lo)] = std::move(c);
  p.normalize();
  return p;
}

int LaurentPoly::max_exponent() const {
  assert(!coeffs_.empty());
  return valuation_ + step_ * static_cast<int>(coeffs_.size() - 1);
}

Int LaurentPoly::coefficient_at(int exponent) const {
  if (coeffs_.empty()) return Int(0);
  int off = exponent - valuation_;
  if (off < 0 || off % step_ != 0) return Int(0);
  size_t idx = static_cast<size_t>(off / step_);
  if (idx >= coeffs_.size()) return Int(0);
  return coeffs_[idx];
}

Int LaurentPoly::absolute_term() const {
  if (!coeffs_.empty() && valuation_ < 0)
    throw ValidationError("absolute_term: polynomial has negative valuation");
  return coefficient_at(0);
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r(ring_);
  if (coeffs_.empty()) return r;
  r.valuation_ = -max_exponent();
  r.step_ = step_;
  r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
  return r;
}

LaurentPoly::SymParts LaurentPoly::sym_decompose() const {
  SymParts out{LaurentPoly(ring_), Int(0), LaurentPoly(ring_)};
  out.f0 = coefficient_at(0);
  std::vector<std::pair<int, Int>> minus_terms, sym_terms;
  for_each_term([&](int e, const Int& c) {
    if (e < 0) {
      minus_terms.emplace_back(-e, c);
      sym_terms.emplace_back(e, c);
      sym_terms.emplace_back(-e, c);
    }
  });
  if (!out.f0.is_zero()) sym_terms.emplace_back(0, out.f0);
  out.f_minus = from_terms(minus_terms, ring_);
  out.f_sym = from_terms(sym_terms, ring_);
  return out;
}

Int LaurentPoly::evaluate(long long t) const {
  if (!ring_.is_exact())
    throw ValidationError("evaluate: requires the exact integer ring");
  if (coeffs_.empty()) return Int(0);
  if (t == 1 || t == -1) {
    Int acc(0);
    for_each_term([&](int e, const Int& c) {
      bool negate = (t == -1) && ((e % 2) != 0);
      if (negate)
        acc -= c;
      else
        acc += c;
    });
    return acc;
  }
  if (valuation_ < 0)
    throw ValidationError("evaluate: negative valuation requires t = +-1");
  Int tt(t);
  // Horner from the top exponent down.
  Int acc = coeffs_.back();
  for (int i = static_cast<int>(coeffs_.size()) - 2; i >= 0; --i) {
    for (int k = 0; k < step_; ++k) acc *= tt;
    acc += coeffs_[static_cast<size_t>(i)];
  }
  for (int k = 0; k < valuation_; ++k) acc *= tt;
  return acc;
}

std::vector<Int> LaurentPoly::to_classical(unsigned length_diff) const {
  std::vector<Int> out;
  if (coeffs_.empty()) return out;
  if (valuation_ < 0)
    throw ValidationError("to_classical: polynomial has negative valuation");
  int d = static_cast<int>(length_diff);
  if (max_exponent() > d)
    throw ValidationError("to_classical: exponent exceeds length difference");
  out.assign(static_cast<size_t>((d - valuation_) / 2) + 1, Int(0));
  bool bad_parity = false;
  for_each_term([&](int e, const Int& c) {
    if (((d - e) % 2) != 0) {
      bad_parity = true;
      return;
    }
    out[static_cast<size_t>((d - e) / 2)] = c;
  });
  if (bad_parity)
    throw ValidationError("to_classical: parity mismatch with length difference");
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

void LaurentPoly::for_each_term(const std::function<void(int, const Int&)>& fn) const {
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero())
      fn(valuation_ + step_ * static_cast<int>(i), coeffs_[i]);
  }
}

void LaurentPoly::check_same_ring(const LaurentPoly& a, const LaurentPoly& b) {
  if (!(a.ring_ == b.ring_))
    throw ValidationError("laurent: coefficient ring mismatch");
}

void LaurentPoly::normalize() {
  size_t lo = 0, hi = coeffs_.size();
  while (lo < hi && coeffs_[lo].is_zero()) ++lo;
  while (hi > lo && coeffs_[hi - 1].is_zero()) --hi;
  if (lo == hi) {
    coeffs_.clear();
    valuation_ = 0;
    step_ = 2;
    return;
  }
  if (lo > 0 || hi < coeffs_.size()) {
    valuation_ += step_ * static_cast<int>(lo);
    coeffs_.erase(coeffs_.begin() + static_cast<long>(hi), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lo));
  }
  if (step_ == 1) {
    // promote to the packed representation when one parity is absent
    bool packable = true;
    for (size_t i = 1; i < coeffs_.size(); i += 2) {
      if (!coeffs_[i].is_zero()) {
        packable = false;
        break;
      }
    }
    if (packable) {
      std::vector<Int> packed;
      packed.reserve(coeffs_.size() / 2 + 1);
      for (size_t i = 0; i < coeffs_.size(); i += 2) packed.push_back(std::move(coeffs_[i]));
      coeffs_ = std::move(packed);
      step_ = 2;
    }
  }
  if (coeffs_.size() == 1) step_ = 2;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly::check_same_ring(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& ring = a.ring_;
  LaurentPoly r(ring);
  bool packed = a.step_ == 2 && b.step_ == 2 && (((a.valuation_ - b.valuation_) % 2) == 0);
  int g = packed ? 2 : 1;
  int lo = std::min(a.valuation_, b.valuation_);
  int hi = std::max(a.max_exponent(), b.max_exponent());
  r.valuation_ = lo;
  r.step_ = g;
  r.coeffs_.assign(static_cast<size_t>((hi - lo) / g) + 1, Int(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    int e = a.valuation_ + a.step_ * static_cast<int>(i);
    r.coeffs_[static_cast<size_t>((e - lo) / g)] = a.coeffs_[i];
  }
  for (size_t i = 0; i < b.coeffs_.size(); ++i) {
    int e = b.valuation_ + b.step_ * static_cast<int>(i);
    size_t k = static_cast<size_t>((e - lo) / g);
    r.coeffs_[k] = ring.add(r.coeffs_[k], b.coeffs_[i]);
  }
  r.normalize();
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*this);
  for (auto& c : r.coeffs_) c = ring_.neg(c);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly::check_same_ring(a, b);
  const auto& ring = a.ring_;
  LaurentPoly r(ring);
  if (a.is_zero() || b.is_zero()) return r;
  r.valuation_ = a.valuation_ + b.valuation_;
  if (a.step_ == 2 && b.step_ == 2) {
    r.step_ = 2;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        r.coeffs_[i + j] = ring.add(r.coeffs_[i + j], ring.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  } else {
    r.step_ = 1;
    size_t span = static_cast<size_t>((a.coeffs_.size() - 1) * a.step_ +
                                      (b.coeffs_.size() - 1) * b.step_) + 1;
    r.coeffs_.assign(span, Int(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j) {
        size_t k = i * a.step_ + j * b.step_;
        r.coeffs_[k] = ring.add(r.coeffs_[k], ring.mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
  }
  r.normalize();
  return r;
}

LaurentPoly LaurentPoly::mul_monomial(int a, const Int& c) const {
  LaurentPoly r = mul_scalar(c);
  r.valuation_ += a;
  return r;
}

LaurentPoly LaurentPoly::mul_scalar(const Int& c) const {
  LaurentPoly r(ring_);
  Int cc = ring_.reduce(c);
  if (cc.is_zero() || is_zero()) return r;
  r.valuation_ = valuation_;
  r.step_ = step_;
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& x : coeffs_) r.coeffs_.push_back(ring_.mul(x, cc));
  r.normalize();
  return r;
}

LaurentPoly LaurentPoly::shifted(int a) const {
  LaurentPoly r(*this);
  if (!r.coeffs_.empty()) r.valuation_ += a;
  return r;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for_each_term([&](int e, const Int& c) {
    bool neg = c.sign() < 0;
    Int mag = neg ? -c : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    bool unit = mag == Int(1);
    if (e == 0) {
      os << mag.to_string();
    } else {
      if (!unit) os << mag.to_string() << "*";
      if (e == 1)
        os << "v";
      else
        os << "v^" << e;
    }
  });
  return os.str();
}

void accumulate(LaurentPoly& dst, const LaurentPoly& src, int shift, const Int& scale) {
  LaurentPoly::check_same_ring(dst, src);
  const auto& ring = dst.ring_;
  if (src.is_zero() || scale.is_zero()) return;
  if (dst.is_zero()) {
    dst = src.mul_monomial(shift, scale);
    return;
  }
  int sv = src.valuation_ + shift;
  int smax = src.max_exponent() + shift;
  bool packed = dst.step_ == 2 && src.step_ == 2 && (((dst.valuation_ - sv) % 2) == 0);
  int g = packed ? 2 : 1;
  int lo = std::min(dst.valuation_, sv);
  int hi = std::max(dst.max_exponent(), smax);
  std::vector<Int> merged(static_cast<size_t>((hi - lo) / g) + 1, Int(0));
  for (size_t i = 0; i < dst.coeffs_.size(); ++i) {
    int e = dst.valuation_ + dst.step_ * static_cast<int>(i);
    merged[static_cast<size_t>((e - lo) / g)] = std::move(dst.coeffs_[i]);
  }
  bool unit = scale == Int(1);
  for (size_t i = 0; i < src.coeffs_.size(); ++i) {
    int e = sv + src.step_ * static_cast<int>(i);
    size_t k = static_cast<size_t>((e - lo) / g);
    merged[k] = ring.add(merged[k], unit ? src.coeffs_[i] : ring.mul(scale, src.coeffs_[i]));
  }
  dst.valuation_ = lo;
  dst.step_ = g;
  dst.coeffs_ = std::move(merged);
  dst.normalize();
}

Int crt_combine(const std::vector<std::pair<uint64_t, uint64_t>>& residues) {
  Int x(0);
  Int big_m(1);
  for (const auto& [v, m] : residues) {
    if (m < 2) throw ValidationError("crt_combine: modulus must be >= 2");
    if (v >= m) throw ValidationError("crt_combine: value out of range [0, modulus)");
    uint64_t m_red = big_m.mod_u64(m);
    if (std::gcd(m_red, m) != 1)
      throw ValidationError("crt_combine: moduli are not pairwise coprime");
    // x_new = x + M * ((v - x) * M^{-1} mod m)
    uint64_t x_red = x.mod_u64(m);
    uint64_t diff = v >= x_red ? v - x_red : v + m - x_red;
    uint64_t t = mulmod_u64(diff, invmod_u64(m_red, m), m);
    x += big_m * Int(static_cast<unsigned long long>(t));
    big_m *= Int(static_cast<unsigned long long>(m));
  }
  return x;
}

}  // namespace klp::laurent
