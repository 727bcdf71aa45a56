#ifndef KLPAR_BRUHATMAP_HPP
#define KLPAR_BRUHATMAP_HPP

#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <vector>

#include "core/coxeter.hpp"

namespace klp::bruhat {

using coxeter::CoxeterElement;
using coxeter::CoxeterSystem;

enum class StepKind : uint8_t { Inside, NotInQuotient, Outside };

struct StepResult {
  StepKind kind;
  uint32_t index;  // 1-based position when kind == Inside
};

// Table over the interval I_x = { y in W^J : y <= x }: row i lists, per
// generator, the position of y s_j inside the interval (1-based), -1 when
// y s_j leaves W^J, and 0 when y s_j stays in W^J but exceeds the interval.
// Row order refines the Bruhat order; row 1 is the identity. Immutable
// after construction and safe to share across threads.
class BruhatMap {
 public:
  uint32_t size() const { return n_; }
  int rank() const { return rank_; }
  uint64_t jmask() const { return jmask_; }

  // i is 1-based; s is a 0-based generator.
  StepResult step(uint32_t i, int s) const;
  int32_t raw_entry(uint32_t i, int s) const {
    return table_[(static_cast<size_t>(i) - 1) * rank_ + static_cast<size_t>(s)];
  }
  uint32_t length(uint32_t i) const { return lengths_[i - 1]; }
  uint32_t max_length() const { return lengths_[x_index_ - 1]; }
  uint32_t x_index() const { return x_index_; }  // 1-based position of x

  // (parent position, generator); parent 0 only for the identity row.
  std::pair<uint32_t, int> parent(uint32_t i) const {
    return {parent_idx_[i - 1], static_cast<int>(parent_gen_[i - 1])};
  }

  const std::vector<uint16_t>& x_word() const { return x_word_; }  // 0-based letters

  std::vector<int> word_of(uint32_t i) const;
  CoxeterElement element_of(uint32_t i) const;  // requires a bound system

  const std::shared_ptr<const CoxeterSystem>& system() const { return system_; }
  void bind_system(std::shared_ptr<const CoxeterSystem> sys);

  void serialize(std::ostream& os) const;
  static BruhatMap deserialize(std::istream& is,
                               std::shared_ptr<const CoxeterSystem> sys = nullptr);

  bool same_table(const BruhatMap& o) const {
    return n_ == o.n_ && rank_ == o.rank_ && jmask_ == o.jmask_ && table_ == o.table_ &&
           lengths_ == o.lengths_ && parent_idx_ == o.parent_idx_ &&
           parent_gen_ == o.parent_gen_ && x_word_ == o.x_word_;
  }

 private:
  friend class Builder;
  uint32_t n_ = 0;
  int rank_ = 0;
  uint64_t jmask_ = 0;
  uint32_t x_index_ = 1;
  std::vector<int32_t> table_;       // n * rank, row-major
  std::vector<uint32_t> lengths_;
  std::vector<uint32_t> parent_idx_;  // 1-based, 0 for the identity row
  std::vector<uint16_t> parent_gen_;  // 0-based letter, unused for identity
  std::vector<uint16_t> x_word_;      // 0-based letters
  std::shared_ptr<const CoxeterSystem> system_;
};

struct BuildOptions {
  bool shed_memory = false;
  uint64_t max_elements = (1ull << 31) - 1;
};

// Construction-only scratch retained for verification at small scale.
struct BuildScratch {
  std::vector<CoxeterElement> reps;              // empty slots were shed
  std::vector<std::vector<uint32_t>> coatoms;    // 0-based indices
};

BruhatMap build(std::shared_ptr<const CoxeterSystem> sys, uint64_t jmask,
                const CoxeterElement& x, const BuildOptions& opts = {},
                BuildScratch* scratch_out = nullptr);

}  // namespace klp::bruhat

#endif
