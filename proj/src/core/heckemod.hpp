#ifndef KLPAR_HECKEMOD_HPP
#define KLPAR_HECKEMOD_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "core/bruhatmap.hpp"
#include "core/laurent.hpp"

namespace klp::hecke {

using laurent::CoefficientRing;
using laurent::Int;
using laurent::LaurentPoly;

// Sparse A-linear combination of basis vectors M_y, indexed by positions of
// a BruhatMap; terms are kept sorted by index descending (leading term
// first). Elements are immutable values.
class ModuleElement {
 public:
  ModuleElement() = default;
  ModuleElement(const bruhat::BruhatMap* map, CoefficientRing ring)
      : map_(map), ring_(ring) {}

  static ModuleElement basis(const bruhat::BruhatMap& map, uint32_t i,
                             CoefficientRing ring);
  static ModuleElement from_terms(const bruhat::BruhatMap& map, CoefficientRing ring,
                                  std::vector<std::pair<uint32_t, LaurentPoly>> terms);

  const bruhat::BruhatMap* map_ref() const { return map_; }
  const CoefficientRing& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::vector<std::pair<uint32_t, LaurentPoly>>& terms() const { return terms_; }

  // Highest-index term; element must be nonzero.
  const std::pair<uint32_t, LaurentPoly>& leading() const;
  LaurentPoly coefficient_of(uint32_t i) const;

  // Right action of the Kazhdan-Lusztig generator C_s; throws if a term
  // steps outside the interval of the map.
  ModuleElement act_Cs(int s) const;

  // this + f * other
  ModuleElement add_scaled(const LaurentPoly& f, const ModuleElement& other) const;

  bool operator==(const ModuleElement& o) const {
    return map_ == o.map_ && ring_ == o.ring_ && terms_ == o.terms_;
  }

 private:
  const bruhat::BruhatMap* map_ = nullptr;
  CoefficientRing ring_;
  std::vector<std::pair<uint32_t, LaurentPoly>> terms_;  // index descending
};

enum class BVariant : uint8_t { B, BPrime };

// Lemma-style chain step: from a bar-invariant unitriangular element with
// leading term M_{x'} and a generator s with x = x' s longer inside W^J,
// produce B_x = prev C_s or B'_x = prev C_s - (v + v^{-1}) prev.
ModuleElement make_B(const ModuleElement& prev, int s, BVariant variant);

}  // namespace klp::hecke

#endif
