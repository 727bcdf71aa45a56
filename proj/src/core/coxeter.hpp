#ifndef KLPAR_COXETER_HPP
#define KLPAR_COXETER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/rootdata.hpp"

namespace klp::coxeter {

using rootdata::Matrix;

// Group element realized by its action on the root lattice: fwd column j
// holds the coordinates of w(alpha_j) in the simple-root basis, inv the
// same for w^{-1}. Equality and hashing use fwd only. Immutable.
class CoxeterElement {
 public:
  CoxeterElement() = default;

  int rank() const { return rank_; }
  const std::vector<long long>& fwd() const { return fwd_; }
  const std::vector<long long>& inv() const { return inv_; }
  long long fwd_at(int i, int j) const { return fwd_[static_cast<size_t>(i) * rank_ + j]; }
  long long inv_at(int i, int j) const { return inv_[static_cast<size_t>(i) * rank_ + j]; }

  // Length when it was known at construction time, else -1.
  int known_length() const { return known_length_; }

  bool operator==(const CoxeterElement& o) const { return fwd_ == o.fwd_; }
  bool operator!=(const CoxeterElement& o) const { return fwd_ != o.fwd_; }
  size_t hash() const;

 private:
  friend class CoxeterSystem;
  int rank_ = 0;
  int known_length_ = -1;
  std::vector<long long> fwd_, inv_;
};

struct ElementHash {
  size_t operator()(const CoxeterElement& w) const { return w.hash(); }
};

// A crystallographic Coxeter system defined by a generalized Cartan matrix
// (diagonal 2, off-diagonal <= 0, symmetric zero pattern, rank-2 products
// at most 4). Bond labels come out as 2, 3, 4, 6 or infinity.
class CoxeterSystem {
 public:
  explicit CoxeterSystem(Matrix cartan);

  // "A3", "B5", ... or "affine:F4" (untwisted extension, affine node last).
  static CoxeterSystem from_name(const std::string& spec);

  int rank() const { return rank_; }
  const Matrix& cartan() const { return cartan_; }
  long long cartan_at(int i, int j) const { return cartan_[i][j]; }
  // Coxeter bond label m_ij (2, 3, 4, 6), or 0 for an infinite bond.
  int bond(int i, int j) const;

  const CoxeterElement& identity() const { return identity_; }
  const CoxeterElement& generator(int i) const;

  CoxeterElement multiply(const CoxeterElement& a, const CoxeterElement& b) const;
  CoxeterElement inverse(const CoxeterElement& a) const;
  // w * s and s * w; O(rank^2)
  CoxeterElement mult_gen_right(const CoxeterElement& w, int s) const;
  CoxeterElement mult_gen_left(int s, const CoxeterElement& w) const;

  // Bitmask over generators (bit i set for s_i).
  uint32_t left_descents(const CoxeterElement& w) const;
  uint32_t right_descents(const CoxeterElement& w) const;

  bool is_identity(const CoxeterElement& w) const;
  unsigned length(const CoxeterElement& w) const;
  // Deterministic reduced word by repeatedly stripping the smallest left
  // descent; multiplying the letters left to right gives back w.
  std::vector<int> reduced_word(const CoxeterElement& w) const;
  CoxeterElement from_word(const std::vector<int>& word) const;

  // x in W^J: no left descent lies in J.
  bool is_min_coset_rep(const CoxeterElement& w, uint64_t jmask) const {
    return (left_descents(w) & jmask) == 0;
  }

  // Longest element of a finite system, found by repeated right ascents;
  // throws LimitError after max_steps for (near-)infinite systems.
  CoxeterElement longest_element(size_t max_steps = 1u << 24) const;

 private:
  CoxeterElement make_identity() const;
  void validate() const;

  int rank_;
  Matrix cartan_;
  CoxeterElement identity_;
  std::vector<CoxeterElement> generators_;
};

}  // namespace klp::coxeter

#endif
