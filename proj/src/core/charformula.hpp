#ifndef KLPAR_CHARFORMULA_HPP
#define KLPAR_CHARFORMULA_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/bruhatmap.hpp"
#include "core/klsolver.hpp"
#include "core/rootdata.hpp"

namespace klp::charform {

using num::Int;

// Affine Weyl group W_p = p Z Phi >| W with its dot action on the weight
// lattice, realized on fundamental-weight coordinates. The affine wall is
// <lambda + rho, alpha~^vee> = p for the highest short root alpha~, which
// makes the simple reflections exactly S plus the affine node (indexed
// last). Weights are integer vectors in fundamental-weight coordinates.
struct AffineSetup {
  rootdata::RootSystemInfo info;
  long long p = 0;
  std::shared_ptr<const coxeter::CoxeterSystem> affine;
  std::vector<long long> alpha_tilde_fw;     // fw coords of the highest short root
  std::vector<long long> alpha_tilde_covec;  // coroot coords of its dual
  long long rho_pairing = 0;                 // <rho, alpha~^vee>

  int finite_rank() const { return info.rank; }
  int affine_gen() const { return info.rank; }
  uint64_t finite_jmask() const { return (1ull << info.rank) - 1; }

  // w.lambda for a single generator (0-based; info.rank is the affine one).
  std::vector<long long> dot(int gen, const std::vector<long long>& wt) const;
  // (t1 ... tk).0 by folding from the right.
  std::vector<long long> weight_of_word(const std::vector<int>& word) const;
};

// p == 0 picks the smallest prime >= Coxeter number.
AffineSetup build_setup(const rootdata::FiniteType& type, long long p = 0);

struct RegionMember {
  uint32_t map_index = 0;  // 1-based position in the Bruhat map
  std::vector<long long> weight;
  unsigned length = 0;
};

// The restricted region B together with the Bruhat map of I_{w'} (J = S).
struct RestrictedRegion {
  AffineSetup setup;
  std::vector<RegionMember> members;  // sorted by map_index; w' is the last
  size_t w_prime = 0;                 // position in members
  std::shared_ptr<bruhat::BruhatMap> map;

  bool in_B(uint32_t map_index) const;
  const RegionMember& longest() const { return members[w_prime]; }
};

struct EnumerateOptions {
  uint64_t safety_cap = 1ull << 24;  // visited-state bound
  bruhat::BuildOptions map_options;
};

RestrictedRegion enumerate_B(const AffineSetup& setup, const EnumerateOptions& opts = {});

// Weight-only breadth-first count of B (no elements, no map); used for the
// order-formula cross-check on types too large for a full enumeration.
unsigned long long count_B(const AffineSetup& setup, uint64_t safety_cap = 1ull << 26);

// Weyl dimension formula, exact.
Int dim_weyl(const rootdata::RootSystemInfo& info, const std::vector<long long>& lambda_fw);

// Pairs (y, m_{y,x}(-1)) over the support of the canonical element.
std::vector<std::pair<uint32_t, Int>> character_row(const solver::CanonicalElement& elem);

// sum_y m_{y,x}(-1) * dim V(y.0) with weights taken at dim_setup's prime.
Int dim_simple(const RestrictedRegion& region, const AffineSetup& dim_setup,
               const solver::CanonicalElement& elem);

// dim H^1 = coefficient of v in m_{1,x}.
Int h1_dimension(const solver::CanonicalElement& elem);

// Ext^i dimensions are the coefficients of m_{y,x}; plain accessor.
laurent::LaurentPoly ext_poly(const solver::CanonicalElement& elem, uint32_t y);

struct H1Table {
  Int max;
  std::vector<uint32_t> witnesses;  // map indices of maximizing x in B
};

H1Table h1_table(const RestrictedRegion& region, solver::Solver& solver);

// CLI weight syntax: comma-separated integers, allowing the token "p" in
// coordinate expressions like "p-2" resolved against the given prime.
std::vector<long long> parse_weight(const std::string& text, long long p, int rank);

}  // namespace klp::charform

#endif
