#include "core/coxeter.hpp"

#include <cassert>

namespace klp::coxeter {

namespace {

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw LimitError("coxeter: matrix entry overflow");
  return r;
}

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw LimitError("coxeter: matrix entry overflow");
  return r;
}

}  // namespace

size_t CoxeterElement::hash() const {
  size_t h = 1469598103934665603ULL;
  for (long long x : fwd_) {
    h ^= static_cast<size_t>(x);
    h *= 1099511628211ULL;
  }
  return h;
}

CoxeterSystem::CoxeterSystem(Matrix cartan) : rank_(static_cast<int>(cartan.size())), cartan_(std::move(cartan)) {
  validate();
  identity_ = make_identity();
  generators_.reserve(rank_);
  for (int s = 0; s < rank_; ++s) {
    CoxeterElement g = identity_;
    for (int j = 0; j < rank_; ++j)
      g.fwd_[static_cast<size_t>(s) * rank_ + j] -= cartan_[s][j];
    g.inv_ = g.fwd_;
    g.known_length_ = 1;
    generators_.push_back(std::move(g));
  }
}

void CoxeterSystem::validate() const {
  if (rank_ < 1 || rank_ > 64)
    throw ValidationError("coxeter: rank must be between 1 and 64");
  for (int i = 0; i < rank_; ++i) {
    if (static_cast<int>(cartan_[i].size()) != rank_)
      throw ValidationError("coxeter: Cartan matrix is not square");
    if (cartan_[i][i] != 2) throw ValidationError("coxeter: diagonal entries must be 2");
    for (int j = 0; j < rank_; ++j) {
      if (i == j) continue;
      if (cartan_[i][j] > 0)
        throw ValidationError("coxeter: off-diagonal entries must be <= 0");
      if ((cartan_[i][j] == 0) != (cartan_[j][i] == 0))
        throw ValidationError("coxeter: zero pattern must be symmetric");
      long long p = cartan_[i][j] * cartan_[j][i];
      if (p > 4)
        throw ValidationError(
            "coxeter: indefinite rank-2 block (bond product > 4) is unsupported");
    }
  }
}

CoxeterSystem CoxeterSystem::from_name(const std::string& spec) {
  const std::string affine_prefix = "affine:";
  if (spec.rfind(affine_prefix, 0) == 0) {
    auto t = rootdata::parse_finite_type(spec.substr(affine_prefix.size()));
    auto info = rootdata::root_system_info(t);
    return CoxeterSystem(rootdata::affine_extension(info, /*by_short_root=*/false));
  }
  return CoxeterSystem(rootdata::cartan_matrix(rootdata::parse_finite_type(spec)));
}

int CoxeterSystem::bond(int i, int j) const {
  if (i == j) return 1;
  switch (cartan_[i][j] * cartan_[j][i]) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

CoxeterElement CoxeterSystem::make_identity() const {
  CoxeterElement e;
  e.rank_ = rank_;
  e.known_length_ = 0;
  e.fwd_.assign(static_cast<size_t>(rank_) * rank_, 0);
  for (int i = 0; i < rank_; ++i) e.fwd_[static_cast<size_t>(i) * rank_ + i] = 1;
  e.inv_ = e.fwd_;
  return e;
}

const CoxeterElement& CoxeterSystem::generator(int i) const {
  if (i < 0 || i >= rank_) throw ValidationError("coxeter: generator index out of range");
  return generators_[static_cast<size_t>(i)];
}

CoxeterElement CoxeterSystem::multiply(const CoxeterElement& a, const CoxeterElement& b) const {
  if (a.rank_ != rank_ || b.rank_ != rank_)
    throw ValidationError("coxeter: element rank mismatch");
  CoxeterElement r;
  r.rank_ = rank_;
  r.fwd_.assign(static_cast<size_t>(rank_) * rank_, 0);
  r.inv_.assign(static_cast<size_t>(rank_) * rank_, 0);
  const int n = rank_;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long av = a.fwd_[static_cast<size_t>(i) * n + k];
      if (av == 0) continue;
      for (int j = 0; j < n; ++j) {
        long long t = checked_mul(av, b.fwd_[static_cast<size_t>(k) * n + j]);
        auto& cell = r.fwd_[static_cast<size_t>(i) * n + j];
        cell = checked_add(cell, t);
      }
    }
  // (ab)^{-1} = b^{-1} a^{-1}
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long bv = b.inv_[static_cast<size_t>(i) * n + k];
      if (bv == 0) continue;
      for (int j = 0; j < n; ++j) {
        long long t = checked_mul(bv, a.inv_[static_cast<size_t>(k) * n + j]);
        auto& cell = r.inv_[static_cast<size_t>(i) * n + j];
        cell = checked_add(cell, t);
      }
    }
  return r;
}

CoxeterElement CoxeterSystem::inverse(const CoxeterElement& a) const {
  CoxeterElement r;
  r.rank_ = a.rank_;
  r.known_length_ = a.known_length_;
  r.fwd_ = a.inv_;
  r.inv_ = a.fwd_;
  return r;
}

CoxeterElement CoxeterSystem::mult_gen_right(const CoxeterElement& w, int s) const {
  if (s < 0 || s >= rank_) throw ValidationError("coxeter: generator index out of range");
  if (w.rank_ != rank_) throw ValidationError("coxeter: element rank mismatch");
  const int n = rank_;
  CoxeterElement r = w;
  r.known_length_ = -1;
  // fwd' = fwd * G_s: column ops driven by column s
  for (int i = 0; i < n; ++i) {
    long long v = w.fwd_[static_cast<size_t>(i) * n + s];
    if (v == 0) continue;
    for (int j = 0; j < n; ++j) {
      long long c = cartan_[s][j];
      if (c == 0 && j != s) continue;
      auto& cell = r.fwd_[static_cast<size_t>(i) * n + j];
      cell = checked_add(cell, checked_mul(-c, v));
    }
  }
  // inv' = G_s * inv: row s is replaced
  for (int j = 0; j < n; ++j) {
    long long acc = 0;
    for (int k = 0; k < n; ++k) {
      long long c = cartan_[s][k];
      if (c == 0) continue;
      acc = checked_add(acc, checked_mul(c, w.inv_[static_cast<size_t>(k) * n + j]));
    }
    auto& cell = r.inv_[static_cast<size_t>(s) * n + j];
    cell = checked_add(w.inv_[static_cast<size_t>(s) * n + j], -acc);
  }
  return r;
}

CoxeterElement CoxeterSystem::mult_gen_left(int s, const CoxeterElement& w) const {
  if (s < 0 || s >= rank_) throw ValidationError("coxeter: generator index out of range");
  if (w.rank_ != rank_) throw ValidationError("coxeter: element rank mismatch");
  const int n = rank_;
  CoxeterElement r = w;
  r.known_length_ = -1;
  for (int j = 0; j < n; ++j) {
    long long acc = 0;
    for (int k = 0; k < n; ++k) {
      long long c = cartan_[s][k];
      if (c == 0) continue;
      acc = checked_add(acc, checked_mul(c, w.fwd_[static_cast<size_t>(k) * n + j]));
    }
    auto& cell = r.fwd_[static_cast<size_t>(s) * n + j];
    cell = checked_add(w.fwd_[static_cast<size_t>(s) * n + j], -acc);
  }
  for (int i = 0; i < n; ++i) {
    long long v = w.inv_[static_cast<size_t>(i) * n + s];
    if (v == 0) continue;
    for (int j = 0; j < n; ++j) {
      long long c = cartan_[s][j];
      if (c == 0 && j != s) continue;
      auto& cell = r.inv_[static_cast<size_t>(i) * n + j];
      cell = checked_add(cell, checked_mul(-c, v));
    }
  }
  return r;
}

uint32_t CoxeterSystem::left_descents(const CoxeterElement& w) const {
  // s is a left descent iff w^{-1}(alpha_s) is a negative root, i.e. the
  // s-th column of inv is nonpositive.
  uint32_t mask = 0;
  const int n = rank_;
  for (int s = 0; s < n; ++s) {
    bool nonpos = true;
    for (int i = 0; i < n; ++i) {
      if (w.inv_[static_cast<size_t>(i) * n + s] > 0) {
        nonpos = false;
        break;
      }
    }
    if (nonpos) mask |= 1u << s;
  }
  return mask;
}

uint32_t CoxeterSystem::right_descents(const CoxeterElement& w) const {
  uint32_t mask = 0;
  const int n = rank_;
  for (int s = 0; s < n; ++s) {
    bool nonpos = true;
    for (int i = 0; i < n; ++i) {
      if (w.fwd_[static_cast<size_t>(i) * n + s] > 0) {
        nonpos = false;
        break;
      }
    }
    if (nonpos) mask |= 1u << s;
  }
  return mask;
}

bool CoxeterSystem::is_identity(const CoxeterElement& w) const {
  return w == identity_;
}

unsigned CoxeterSystem::length(const CoxeterElement& w) const {
  if (w.known_length_ >= 0) return static_cast<unsigned>(w.known_length_);
  unsigned len = 0;
  CoxeterElement cur = w;
  while (!is_identity(cur)) {
    uint32_t ld = left_descents(cur);
    assert(ld != 0);
    int s = __builtin_ctz(ld);
    cur = mult_gen_left(s, cur);
    ++len;
  }
  return len;
}

std::vector<int> CoxeterSystem::reduced_word(const CoxeterElement& w) const {
  std::vector<int> word;
  CoxeterElement cur = w;
  while (!is_identity(cur)) {
    uint32_t ld = left_descents(cur);
    assert(ld != 0);
    int s = __builtin_ctz(ld);
    cur = mult_gen_left(s, cur);
    word.push_back(s);
  }
  return word;
}

CoxeterElement CoxeterSystem::from_word(const std::vector<int>& word) const {
  CoxeterElement w = identity_;
  for (int s : word) w = mult_gen_right(w, s);
  return w;
}

CoxeterElement CoxeterSystem::longest_element(size_t max_steps) const {
  CoxeterElement w = identity_;
  uint32_t all = rank_ >= 32 ? ~0u : ((1u << rank_) - 1);
  for (size_t step = 0; step < max_steps; ++step) {
    uint32_t asc = all & ~right_descents(w);
    if (asc == 0) return w;
    w = mult_gen_right(w, __builtin_ctz(asc));
  }
  throw LimitError("longest_element: no longest element found (infinite group?)");
}

}  // namespace klp::coxeter
