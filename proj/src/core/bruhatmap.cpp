#include "core/bruhatmap.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "core/io.hpp"

namespace klp::bruhat {

StepResult BruhatMap::step(uint32_t i, int s) const {
  if (i < 1 || i > n_ || s < 0 || s >= rank_)
    throw ValidationError("bruhatmap: step out of bounds");
  int32_t e = raw_entry(i, s);
  if (e > 0) return {StepKind::Inside, static_cast<uint32_t>(e)};
  if (e == -1) return {StepKind::NotInQuotient, 0};
  return {StepKind::Outside, 0};
}

std::vector<int> BruhatMap::word_of(uint32_t i) const {
  if (i < 1 || i > n_) throw ValidationError("bruhatmap: index out of bounds");
  std::vector<int> word;
  uint32_t cur = i;
  while (parent_idx_[cur - 1] != 0) {
    word.push_back(static_cast<int>(parent_gen_[cur - 1]));
    cur = parent_idx_[cur - 1];
  }
  std::reverse(word.begin(), word.end());
  return word;
}

CoxeterElement BruhatMap::element_of(uint32_t i) const {
  if (!system_) throw ValidationError("bruhatmap: no Coxeter system bound");
  return system_->from_word(word_of(i));
}

void BruhatMap::bind_system(std::shared_ptr<const CoxeterSystem> sys) {
  if (sys && sys->rank() != rank_)
    throw ValidationError("bruhatmap: system rank does not match map");
  system_ = std::move(sys);
}

void BruhatMap::serialize(std::ostream& os) const {
  io::CrcWriter w(os);
  w.put_bytes("KLBM", 4);
  w.put<uint32_t>(1);
  w.put<uint16_t>(static_cast<uint16_t>(rank_));
  w.put<uint64_t>(jmask_);
  w.put<uint64_t>(n_);
  for (int32_t e : table_) w.put<int64_t>(e);
  for (uint32_t l : lengths_) w.put<uint32_t>(l);
  for (uint32_t i = 0; i < n_; ++i) {
    w.put<uint64_t>(parent_idx_[i]);
    w.put<uint16_t>(parent_idx_[i] == 0 ? 0 : static_cast<uint16_t>(parent_gen_[i] + 1));
  }
  w.put<uint32_t>(static_cast<uint32_t>(x_word_.size()));
  for (uint16_t t : x_word_) w.put<uint16_t>(static_cast<uint16_t>(t + 1));
  io::write_le<uint64_t>(os, w.crc());
  if (!os) throw IoError("bruhatmap: write failed");
}

BruhatMap BruhatMap::deserialize(std::istream& is,
                                 std::shared_ptr<const CoxeterSystem> sys) {
  io::CrcReader r(is);
  char magic[4];
  r.get_bytes(magic, 4);
  if (std::string(magic, 4) != "KLBM")
    throw IoError("bruhatmap: bad magic (not a KLBM file)");
  uint32_t version = r.get<uint32_t>();
  if (version != 1) throw IoError("bruhatmap: unsupported version");
  BruhatMap m;
  m.rank_ = r.get<uint16_t>();
  m.jmask_ = r.get<uint64_t>();
  uint64_t n = r.get<uint64_t>();
  if (m.rank_ < 1 || m.rank_ > 64 || n == 0 || n > (1ull << 31))
    throw IoError("bruhatmap: implausible header");
  m.n_ = static_cast<uint32_t>(n);
  m.table_.resize(static_cast<size_t>(n) * m.rank_);
  for (auto& e : m.table_) {
    int64_t v = r.get<int64_t>();
    if (v < -1 || v > static_cast<int64_t>(n)) throw IoError("bruhatmap: entry out of range");
    e = static_cast<int32_t>(v);
  }
  m.lengths_.resize(n);
  for (auto& l : m.lengths_) l = r.get<uint32_t>();
  m.parent_idx_.resize(n);
  m.parent_gen_.resize(n);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t p = r.get<uint64_t>();
    uint16_t g = r.get<uint16_t>();
    if (p > n || (p == 0) != (g == 0)) throw IoError("bruhatmap: bad parent record");
    m.parent_idx_[i] = static_cast<uint32_t>(p);
    m.parent_gen_[i] = p == 0 ? 0 : static_cast<uint16_t>(g - 1);
  }
  uint32_t wlen = r.get<uint32_t>();
  m.x_word_.resize(wlen);
  for (auto& t : m.x_word_) {
    uint16_t v = r.get<uint16_t>();
    if (v == 0 || v > m.rank_) throw IoError("bruhatmap: bad word letter");
    t = static_cast<uint16_t>(v - 1);
  }
  uint64_t expect = r.crc();
  uint64_t got = io::read_le<uint64_t>(is);
  if (expect != got) throw IoError("bruhatmap: checksum failure");
  for (uint32_t i = 1; i <= m.n_; ++i) {
    if (m.lengths_[i - 1] == wlen) {
      m.x_index_ = i;
      break;
    }
  }
  if (sys) m.bind_system(std::move(sys));
  return m;
}

BruhatMap build(std::shared_ptr<const CoxeterSystem> sys, uint64_t jmask,
                const CoxeterElement& x, const BuildOptions& opts,
                BuildScratch* scratch_out) {
  const CoxeterSystem& S = *sys;
  const int r = S.rank();
  if (!S.is_min_coset_rep(x, jmask))
    throw ValidationError("bruhatmap: x is not a minimal coset representative for J");

  BruhatMap m;
  m.rank_ = r;
  m.jmask_ = jmask;
  const std::vector<int> word = S.reduced_word(x);
  m.x_word_.reserve(word.size());
  for (int t : word) m.x_word_.push_back(static_cast<uint16_t>(t));

  std::vector<CoxeterElement> reps;
  std::vector<std::vector<uint32_t>> coatoms;
  std::vector<bool> present;
  reps.push_back(S.identity());
  coatoms.emplace_back();
  present.push_back(true);
  m.table_.assign(static_cast<size_t>(r), 0);
  m.lengths_.push_back(0);
  m.parent_idx_.push_back(0);
  m.parent_gen_.push_back(0);

  auto entry = [&](uint32_t i0, int s) -> int32_t& {
    return m.table_[static_cast<size_t>(i0) * r + static_cast<size_t>(s)];
  };

  for (size_t stage = 0; stage < word.size(); ++stage) {
    const int t = word[stage];
    const uint32_t n_old = static_cast<uint32_t>(reps.size());

    // (5) extend by right multiplication with the stage letter
    for (uint32_t j = 0; j < n_old; ++j) {
      if (entry(j, t) != 0) continue;
      assert(present[j]);
      CoxeterElement y = S.mult_gen_right(reps[j], t);
      if (S.left_descents(y) & jmask) {
        entry(j, t) = -1;
        continue;
      }
      if (reps.size() >= opts.max_elements ||
          reps.size() >= static_cast<uint64_t>(std::numeric_limits<int32_t>::max()))
        throw LimitError("bruhatmap: interval size exceeds the configured limit");
      const uint32_t k = static_cast<uint32_t>(reps.size());
      reps.push_back(std::move(y));
      present.push_back(true);
      m.lengths_.push_back(m.lengths_[j] + 1);
      m.parent_idx_.push_back(j + 1);
      m.parent_gen_.push_back(static_cast<uint16_t>(t));
      m.table_.insert(m.table_.end(), static_cast<size_t>(r), 0);
      entry(j, t) = static_cast<int32_t>(k + 1);
      entry(k, t) = static_cast<int32_t>(j + 1);
      // (5b) coatoms of the new element: the parent plus every longer
      // t-neighbor of a parent coatom that stayed in the quotient
      std::vector<uint32_t> co;
      co.push_back(j);
      for (uint32_t w : coatoms[j]) {
        int32_t e = entry(w, t);
        if (e > 0 && m.lengths_[static_cast<size_t>(e) - 1] == m.lengths_[w] + 1)
          co.push_back(static_cast<uint32_t>(e - 1));
      }
      coatoms.push_back(std::move(co));
    }

    // (6) link the new elements to their shorter neighbors for the other
    // generators; each such neighbor is one of the coatoms
    const uint32_t n_new = static_cast<uint32_t>(reps.size());
    for (uint32_t k = n_old; k < n_new; ++k) {
      uint32_t rd = S.right_descents(reps[k]);
      for (int s = 0; s < r; ++s) {
        if (s == t || !((rd >> s) & 1u)) continue;
        if (entry(k, s) != 0) continue;
        CoxeterElement y = S.mult_gen_right(reps[k], s);
        bool found = false;
        for (uint32_t w : coatoms[k]) {
          if (entry(w, s) != 0) continue;
          assert(present[w]);
          if (reps[w] == y) {
            entry(k, s) = static_cast<int32_t>(w + 1);
            entry(w, s) = static_cast<int32_t>(k + 1);
            found = true;
            break;
          }
        }
        if (!found)
          throw LimitError("bruhatmap: internal inconsistency (missing coatom)");
      }
    }

    // (7) optionally drop scratch rows whose table rows are fully resolved
    if (opts.shed_memory && !scratch_out) {
      for (uint32_t i = 0; i < n_new; ++i) {
        if (!present[i]) continue;
        bool resolved = true;
        for (int s = 0; s < r; ++s) {
          if (entry(i, s) == 0) {
            resolved = false;
            break;
          }
        }
        if (resolved) {
          reps[i] = CoxeterElement();
          std::vector<uint32_t>().swap(coatoms[i]);
          present[i] = false;
        }
      }
    }
  }

  // remaining zero entries: decide W^J membership so that the sentinel
  // semantics (-1 outside the quotient, 0 merely outside the interval) are
  // complete in the final table
  const uint32_t n = static_cast<uint32_t>(reps.size());
  for (uint32_t i = 0; i < n; ++i) {
    for (int s = 0; s < r; ++s) {
      if (entry(i, s) != 0) continue;
      assert(present[i]);
      CoxeterElement z = S.mult_gen_right(reps[i], s);
      if (S.left_descents(z) & jmask) entry(i, s) = -1;
    }
  }

  m.n_ = n;
  for (uint32_t i = 0; i < n; ++i) {
    if (m.lengths_[i] == word.size()) {
      m.x_index_ = i + 1;
      break;
    }
  }
  m.system_ = std::move(sys);
  if (scratch_out) {
    scratch_out->reps = std::move(reps);
    scratch_out->coatoms = std::move(coatoms);
  }
  return m;
}

}  // namespace klp::bruhat
