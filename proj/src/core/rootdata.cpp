#include "core/rootdata.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <numeric>
#include <set>

namespace klp::rootdata {

FiniteType parse_finite_type(const std::string& name) {
  if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0])))
    throw ValidationError("bad type name '" + name + "'");
  char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  int rank = 0;
  for (size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i])))
      throw ValidationError("bad type name '" + name + "'");
    rank = rank * 10 + (name[i] - '0');
  }
  auto ok = [&] {
    switch (fam) {
      case 'A': return rank >= 1 && rank <= 16;
      case 'B': return rank >= 2 && rank <= 16;
      case 'C': return rank >= 2 && rank <= 16;
      case 'D': return rank >= 3 && rank <= 16;
      case 'E': return rank >= 6 && rank <= 8;
      case 'F': return rank == 4;
      case 'G': return rank == 2;
      default: return false;
    }
  }();
  if (!ok) throw ValidationError("unsupported type '" + name + "'");
  return FiniteType{fam, rank};
}

Matrix cartan_matrix(const FiniteType& t) {
  int l = t.rank;
  Matrix c(l, std::vector<long long>(l, 0));
  for (int i = 0; i < l; ++i) c[i][i] = 2;
  auto link = [&](int i, int j, long long cij = -1, long long cji = -1) {
    c[i][j] = cij;
    c[j][i] = cji;
  };
  switch (t.family) {
    case 'A':
      for (int i = 0; i + 1 < l; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1);
      // alpha_l is short: <alpha_{l-1}, alpha_l^vee> = -2
      link(l - 2, l - 1, -1, -2);
      break;
    case 'C':
      for (int i = 0; i + 2 < l; ++i) link(i, i + 1);
      // alpha_l is long: <alpha_l, alpha_{l-1}^vee> = -2
      link(l - 2, l - 1, -2, -1);
      break;
    case 'D':
      for (int i = 0; i + 3 < l; ++i) link(i, i + 1);
      link(l - 3, l - 2);
      link(l - 3, l - 1);
      break;
    case 'E':
      // Bourbaki: chain 1-3-4-5-6(-7(-8)), node 2 hangs off node 4.
      link(0, 2);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      if (l >= 7) link(5, 6);
      if (l >= 8) link(6, 7);
      link(1, 3);
      break;
    case 'F':
      link(0, 1);
      link(1, 2, -1, -2);  // <alpha_2, alpha_3^vee> = -2 (alpha_3 short)
      link(2, 3);
      break;
    case 'G':
      link(0, 1, -3, -1);  // alpha_1 short: <alpha_2, alpha_1^vee> = -3
      break;
    default:
      throw ValidationError("unsupported family");
  }
  return c;
}

unsigned long long weyl_order(const FiniteType& t) {
  auto fact = [](int n) {
    unsigned long long r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<unsigned long long>(i);
    return r;
  };
  switch (t.family) {
    case 'A': return fact(t.rank + 1);
    case 'B':
    case 'C': return (1ULL << t.rank) * fact(t.rank);
    case 'D': return (1ULL << (t.rank - 1)) * fact(t.rank);
    case 'E':
      if (t.rank == 6) return 51840ULL;
      if (t.rank == 7) return 2903040ULL;
      return 696729600ULL;
    case 'F': return 1152ULL;
    case 'G': return 12ULL;
  }
  throw ValidationError("unsupported family");
}

int fundamental_group_order(const FiniteType& t) {
  switch (t.family) {
    case 'A': return t.rank + 1;
    case 'B':
    case 'C': return 2;
    case 'D': return 4;
    case 'E': return t.rank == 6 ? 3 : (t.rank == 7 ? 2 : 1);
    case 'F':
    case 'G': return 1;
  }
  throw ValidationError("unsupported family");
}

long long RootSystemInfo::pair_fw(const std::vector<long long>& mu_fw,
                                  const std::vector<long long>& coroot) {
  long long s = 0;
  for (size_t i = 0; i < mu_fw.size(); ++i) s += mu_fw[i] * coroot[i];
  return s;
}

RootSystemInfo root_system_info(const FiniteType& t) {
  RootSystemInfo info;
  info.type = t;
  info.rank = t.rank;
  info.cartan = cartan_matrix(t);
  info.weyl_order = weyl_order(t);
  info.fundamental_group_order = fundamental_group_order(t);
  const int l = t.rank;
  const Matrix& c = info.cartan;

  // symmetrizer d_i: minimal positive integers with d_i c_ij = d_j c_ji;
  // the Dynkin graph is connected, so propagate from node 0.
  {
    std::vector<long long> num(l, 0), den(l, 1);
    num[0] = 1;
    std::vector<int> todo{0};
    while (!todo.empty()) {
      int i = todo.back();
      todo.pop_back();
      for (int j = 0; j < l; ++j) {
        if (i == j || c[i][j] == 0 || num[j] != 0) continue;
        // d_j = d_i * c_ij / c_ji
        num[j] = num[i] * c[i][j];
        den[j] = den[i] * c[j][i];
        if (num[j] < 0 && den[j] < 0) {
          num[j] = -num[j];
          den[j] = -den[j];
        }
        long long g = std::gcd(std::abs(num[j]), std::abs(den[j]));
        num[j] /= g;
        den[j] /= g;
        todo.push_back(j);
      }
    }
    long long lcm = 1;
    for (int i = 0; i < l; ++i) lcm = std::lcm(lcm, den[i]);
    info.symmetrizer.resize(l);
    long long g = 0;
    for (int i = 0; i < l; ++i) {
      info.symmetrizer[i] = num[i] * (lcm / den[i]);
      g = std::gcd(g, info.symmetrizer[i]);
    }
    for (auto& d : info.symmetrizer) d /= g;
  }

  // close the simple roots under all simple reflections
  std::set<std::vector<long long>> all;
  std::vector<std::vector<long long>> queue;
  for (int i = 0; i < l; ++i) {
    std::vector<long long> e(l, 0);
    e[i] = 1;
    all.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto beta = queue.back();
    queue.pop_back();
    for (int i = 0; i < l; ++i) {
      long long pairing = 0;
      for (int j = 0; j < l; ++j) pairing += c[i][j] * beta[j];
      auto img = beta;
      img[i] -= pairing;
      if (all.insert(img).second) queue.push_back(img);
    }
  }
  for (const auto& beta : all) {
    bool pos = false, neg = false;
    for (auto x : beta) {
      if (x > 0) pos = true;
      if (x < 0) neg = true;
    }
    assert(pos != neg);
    if (pos) info.pos_roots.push_back(beta);
  }

  // coroots: beta^vee has coordinates b_i d_i / d_beta over the alpha_i^vee
  auto d_of = [&](const std::vector<long long>& b) {
    long long s = 0;
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) s += b[i] * b[j] * info.symmetrizer[i] * c[i][j];
    assert(s % 2 == 0);
    return s / 2;
  };
  long long dmin = 0, dmax = 0;
  std::vector<long long> droot(info.pos_roots.size());
  for (size_t k = 0; k < info.pos_roots.size(); ++k) {
    droot[k] = d_of(info.pos_roots[k]);
    dmin = dmin == 0 ? droot[k] : std::min(dmin, droot[k]);
    dmax = std::max(dmax, droot[k]);
    std::vector<long long> cor(l);
    for (int i = 0; i < l; ++i) {
      long long numcor = info.pos_roots[k][i] * info.symmetrizer[i];
      assert(numcor % droot[k] == 0);
      cor[i] = numcor / droot[k];
    }
    info.pos_coroots.push_back(std::move(cor));
  }

  // highest root: maximal height among long roots; highest short root:
  // maximal height among short roots (equal to the highest root when the
  // system is simply laced).
  auto height = [](const std::vector<long long>& b) {
    return std::accumulate(b.begin(), b.end(), 0LL);
  };
  long long best_h = -1, best_hs = -1;
  size_t k_long = 0, k_short = 0;
  for (size_t k = 0; k < info.pos_roots.size(); ++k) {
    long long h = height(info.pos_roots[k]);
    if (droot[k] == dmax && h > best_h) {
      best_h = h;
      k_long = k;
    }
    if (droot[k] == dmin && h > best_hs) {
      best_hs = h;
      k_short = k;
    }
  }
  info.highest_root = info.pos_roots[k_long];
  info.highest_short_root = info.pos_roots[k_short];
  info.highest_short_coroot = info.pos_coroots[k_short];
  info.coxeter_number = static_cast<int>(height(info.highest_root)) + 1;
  assert(static_cast<long long>(info.pos_roots.size()) * 2 ==
         static_cast<long long>(l) * info.coxeter_number);
  return info;
}

Matrix affine_extension(const RootSystemInfo& info, bool by_short_root) {
  const int l = info.rank;
  const auto& phi = by_short_root ? info.highest_short_root : info.highest_root;
  // coroot coordinates of phi^vee
  std::vector<long long> phi_cor(l);
  {
    size_t idx = 0;
    bool found = false;
    for (size_t k = 0; k < info.pos_roots.size(); ++k) {
      if (info.pos_roots[k] == phi) {
        idx = k;
        found = true;
        break;
      }
    }
    assert(found);
    (void)found;
    phi_cor = info.pos_coroots[idx];
  }
  Matrix a(l + 1, std::vector<long long>(l + 1, 0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) a[i][j] = info.cartan[i][j];
  a[l][l] = 2;
  for (int j = 0; j < l; ++j) {
    // <alpha_j, phi^vee> and <phi, alpha_j^vee>
    long long aj_phivee = 0, phi_ajvee = 0;
    for (int i = 0; i < l; ++i) {
      aj_phivee += phi_cor[i] * info.cartan[i][j];
      phi_ajvee += phi[i] * info.cartan[j][i];
    }
    a[l][j] = -aj_phivee;
    a[j][l] = -phi_ajvee;
  }
  return a;
}

}  // namespace klp::rootdata
