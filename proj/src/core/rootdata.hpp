#ifndef KLPAR_ROOTDATA_HPP
#define KLPAR_ROOTDATA_HPP

#include <string>
#include <vector>

#include "core/errors.hpp"

namespace klp::rootdata {

using Matrix = std::vector<std::vector<long long>>;

struct FiniteType {
  char family = 'A';  // A B C D E F G
  int rank = 1;
  std::string name() const { return std::string(1, family) + std::to_string(rank); }
};

// Accepts "A3", "F4", ... ; throws ValidationError for unsupported types.
FiniteType parse_finite_type(const std::string& name);

// Cartan matrix with the convention cartan[i][j] = <alpha_j, alpha_i^vee>,
// so that s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i. Bourbaki node
// numbering, 0-based.
Matrix cartan_matrix(const FiniteType& t);

// Root and coroot data computed by closing the simple roots under the
// simple reflections.
struct RootSystemInfo {
  FiniteType type;
  int rank = 0;
  Matrix cartan;
  std::vector<long long> symmetrizer;            // d_i, minimal positive
  std::vector<std::vector<long long>> pos_roots;  // simple-root coordinates
  std::vector<std::vector<long long>> pos_coroots;  // simple-coroot coordinates
  std::vector<long long> highest_root;         // root coordinates (long)
  std::vector<long long> highest_short_root;   // root coordinates
  std::vector<long long> highest_short_coroot;  // coroot coords of its dual
  int coxeter_number = 0;
  unsigned long long weyl_order = 0;
  int fundamental_group_order = 0;

  // <mu, beta^vee> for mu in fundamental-weight coordinates and beta^vee in
  // simple-coroot coordinates is the plain dot product; helper for clarity.
  static long long pair_fw(const std::vector<long long>& mu_fw,
                           const std::vector<long long>& coroot);
};

RootSystemInfo root_system_info(const FiniteType& t);

// Affine node appended last (index rank). by_short_root selects the wall
// root: the highest short root gives the Coxeter system of p Z Phi >| W
// (the linkage-order affine group); the highest long root gives the
// standard untwisted extension.
Matrix affine_extension(const RootSystemInfo& info, bool by_short_root);

unsigned long long weyl_order(const FiniteType& t);
int fundamental_group_order(const FiniteType& t);

}  // namespace klp::rootdata

#endif
