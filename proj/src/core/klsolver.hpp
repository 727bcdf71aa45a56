#ifndef KLPAR_KLSOLVER_HPP
#define KLPAR_KLSOLVER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "core/heckemod.hpp"

namespace klp::solver {

using hecke::BVariant;
using hecke::ModuleElement;
using laurent::CoefficientRing;
using laurent::Int;
using laurent::LaurentPoly;

enum class Strategy : uint8_t { Recursive, FromScratch, Hybrid };

struct SolverConfig {
  Strategy strategy = Strategy::Recursive;
  BVariant b_variant = BVariant::BPrime;
  unsigned workers = 1;
  std::vector<uint64_t> moduli;  // empty: exact integer arithmetic
  bool check_bound = true;       // modular runs require prod(moduli) > 2^l(x)
  size_t hybrid_cache_bytes = 256ull << 20;
};

// One row of the canonical basis: the polynomials m_{y,x} over y, leading
// term first. Exact coefficients (modular runs reconstruct before emitting).
struct CanonicalElement {
  uint32_t x_index = 0;
  std::vector<std::pair<uint32_t, LaurentPoly>> polys;  // index descending

  const LaurentPoly* poly_of(uint32_t y) const;
};

// Largest primes below 2^62, taken until their product exceeds 2^length.
std::vector<uint64_t> default_moduli(unsigned length);

class Solver {
 public:
  Solver(const bruhat::BruhatMap& map, SolverConfig cfg);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  const bruhat::BruhatMap& map() const { return map_; }
  const SolverConfig& config() const { return cfg_; }

  // The canonical element for x. Under the recursive strategy this fills
  // the cache for every index up to x.
  CanonicalElement element(uint32_t x_index);

  // Emit every canonical element in index order.
  void all_canonical(const std::function<void(const CanonicalElement&)>& sink);

  // Seed the recursive cache with a previously computed row (rows must be
  // supplied contiguously from index 1); used for checkpoint resume.
  void put_cached(const CanonicalElement& row);
  uint32_t cached_upto() const;

 private:
  struct Core;
  const bruhat::BruhatMap& map_;
  SolverConfig cfg_;
  std::vector<std::unique_ptr<Core>> cores_;  // one per ring (1 if exact)
  Int moduli_product_;
  CanonicalElement combine(uint32_t x_index);

  friend struct Core;
};

}  // namespace klp::solver

#endif
