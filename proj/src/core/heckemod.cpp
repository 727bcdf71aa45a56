#include "core/heckemod.hpp"

#include <algorithm>
#include <map>

namespace klp::hecke {

ModuleElement ModuleElement::basis(const bruhat::BruhatMap& map, uint32_t i,
                                   CoefficientRing ring) {
  if (i < 1 || i > map.size()) throw ValidationError("heckemod: basis index out of bounds");
  ModuleElement m(&map, ring);
  m.terms_.emplace_back(i, LaurentPoly::constant(Int(1), ring));
  return m;
}

ModuleElement ModuleElement::from_terms(
    const bruhat::BruhatMap& map, CoefficientRing ring,
    std::vector<std::pair<uint32_t, LaurentPoly>> terms) {
  ModuleElement m(&map, ring);
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto& [i, f] : terms) {
    if (i < 1 || i > map.size()) throw ValidationError("heckemod: index out of bounds");
    if (!(f.ring() == ring)) throw ValidationError("heckemod: ring mismatch");
    if (!m.terms_.empty() && m.terms_.back().first == i)
      throw ValidationError("heckemod: duplicate index");
    if (!f.is_zero()) m.terms_.emplace_back(i, std::move(f));
  }
  return m;
}

const std::pair<uint32_t, LaurentPoly>& ModuleElement::leading() const {
  if (terms_.empty()) throw ValidationError("heckemod: leading of zero element");
  return terms_.front();
}

LaurentPoly ModuleElement::coefficient_of(uint32_t i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const auto& t, uint32_t v) { return t.first > v; });
  if (it != terms_.end() && it->first == i) return it->second;
  return LaurentPoly::zero(ring_);
}

ModuleElement ModuleElement::act_Cs(int s) const {
  const auto& map = *map_;
  std::map<uint32_t, LaurentPoly> acc;
  auto add_to = [&](uint32_t idx, LaurentPoly f) {
    auto it = acc.find(idx);
    if (it == acc.end())
      acc.emplace(idx, std::move(f));
    else
      it->second = it->second + f;
  };
  for (const auto& [y, f] : terms_) {
    auto st = map.step(y, s);
    switch (st.kind) {
      case bruhat::StepKind::Inside: {
        add_to(st.index, f);
        bool longer = map.length(st.index) > map.length(y);
        add_to(y, f.shifted(longer ? 1 : -1));
        break;
      }
      case bruhat::StepKind::NotInQuotient:
        add_to(y, f.shifted(1) + f.shifted(-1));
        break;
      case bruhat::StepKind::Outside:
        throw ValidationError("heckemod: action leaves the interval");
    }
  }
  ModuleElement out(map_, ring_);
  out.terms_.reserve(acc.size());
  for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
    if (!it->second.is_zero()) out.terms_.emplace_back(it->first, std::move(it->second));
  }
  return out;
}

ModuleElement ModuleElement::add_scaled(const LaurentPoly& f,
                                        const ModuleElement& other) const {
  if (other.map_ && map_ && other.map_ != map_)
    throw ValidationError("heckemod: elements indexed by different maps");
  if (f.is_zero() || other.is_zero()) return *this;
  ModuleElement out(map_ ? map_ : other.map_, ring_);
  out.terms_.reserve(terms_.size() + other.terms_.size());
  size_t a = 0, b = 0;
  while (a < terms_.size() || b < other.terms_.size()) {
    if (b == other.terms_.size() ||
        (a < terms_.size() && terms_[a].first > other.terms_[b].first)) {
      out.terms_.push_back(terms_[a++]);
    } else if (a == terms_.size() || other.terms_[b].first > terms_[a].first) {
      LaurentPoly g = f * other.terms_[b].second;
      if (!g.is_zero()) out.terms_.emplace_back(other.terms_[b].first, std::move(g));
      ++b;
    } else {
      LaurentPoly g = terms_[a].second + f * other.terms_[b].second;
      if (!g.is_zero()) out.terms_.emplace_back(terms_[a].first, std::move(g));
      ++a;
      ++b;
    }
  }
  return out;
}

ModuleElement make_B(const ModuleElement& prev, int s, BVariant variant) {
  const auto& lead = prev.leading();
  if (!(lead.second == LaurentPoly::constant(Int(1), prev.ring())))
    throw ValidationError("make_B: leading coefficient must be 1");
  const auto& map = *prev.map_ref();
  auto st = map.step(lead.first, s);
  if (st.kind != bruhat::StepKind::Inside || map.length(st.index) <= map.length(lead.first))
    throw ValidationError("make_B: step must increase length inside the quotient");
  ModuleElement acted = prev.act_Cs(s);
  if (variant == BVariant::B) return acted;
  LaurentPoly v_plus_vinv = LaurentPoly::from_terms(
      {{1, Int(1)}, {-1, Int(1)}}, prev.ring());
  return acted.add_scaled(-v_plus_vinv, prev);
}

}  // namespace klp::hecke
