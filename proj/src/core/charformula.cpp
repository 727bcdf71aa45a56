#include "core/charformula.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>

#include "core/primes.hpp"

namespace klp::charform {

std::vector<long long> AffineSetup::dot(int gen, const std::vector<long long>& wt) const {
  const int l = info.rank;
  std::vector<long long> out = wt;
  if (gen < l) {
    // s_i . lambda = lambda - (lambda_i + 1) * alpha_i
    long long c = wt[gen] + 1;
    if (c == 0) return out;
    for (int j = 0; j < l; ++j) out[j] -= c * info.cartan[j][gen];
    return out;
  }
  if (gen != l) throw ValidationError("dot: generator out of range");
  // affine wall: reflect lambda + rho in <., alpha~^vee> = p
  long long pairing = rho_pairing;
  for (int j = 0; j < l; ++j) pairing += alpha_tilde_covec[j] * wt[j];
  long long c = pairing - p;
  for (int j = 0; j < l; ++j) out[j] -= c * alpha_tilde_fw[j];
  return out;
}

std::vector<long long> AffineSetup::weight_of_word(const std::vector<int>& word) const {
  std::vector<long long> wt(info.rank, 0);
  for (auto it = word.rbegin(); it != word.rend(); ++it) wt = dot(*it, wt);
  return wt;
}

AffineSetup build_setup(const rootdata::FiniteType& type, long long p) {
  AffineSetup s;
  s.info = rootdata::root_system_info(type);
  long long h = s.info.coxeter_number;
  if (p == 0) p = static_cast<long long>(primes::next_prime_at_least(static_cast<uint64_t>(h)));
  if (p < h) throw ValidationError("p must be at least the Coxeter number " + std::to_string(h));
  if (!primes::is_prime(static_cast<uint64_t>(p)))
    throw ValidationError("p must be prime");
  s.p = p;
  s.affine = std::make_shared<coxeter::CoxeterSystem>(
      rootdata::affine_extension(s.info, /*by_short_root=*/true));
  const int l = s.info.rank;
  s.alpha_tilde_fw.assign(l, 0);
  for (int j = 0; j < l; ++j)
    for (int i = 0; i < l; ++i)
      s.alpha_tilde_fw[j] += s.info.highest_short_root[i] * s.info.cartan[j][i];
  s.alpha_tilde_covec = s.info.highest_short_coroot;
  s.rho_pairing = 0;
  for (int j = 0; j < l; ++j) s.rho_pairing += s.alpha_tilde_covec[j];
  return s;
}

namespace {

// Affine transformation lambda -> A lambda + b on fw coordinates.
struct AffMap {
  std::vector<long long> a;  // l*l row-major
  std::vector<long long> b;  // l
};

AffMap gen_map(const AffineSetup& s, int g) {
  const int l = s.info.rank;
  AffMap m;
  m.a.assign(static_cast<size_t>(l) * l, 0);
  for (int i = 0; i < l; ++i) m.a[static_cast<size_t>(i) * l + i] = 1;
  m.b.assign(l, 0);
  if (g < l) {
    // A = I - col(alpha_i) e_i^T, b = -col(alpha_i)
    for (int j = 0; j < l; ++j) {
      m.a[static_cast<size_t>(j) * l + g] -= s.info.cartan[j][g];
      m.b[j] = -s.info.cartan[j][g];
    }
  } else {
    // A = I - alpha~_fw covec^T, b = (p - <rho, alpha~^vee>) alpha~_fw
    for (int j = 0; j < l; ++j) {
      for (int k = 0; k < l; ++k)
        m.a[static_cast<size_t>(j) * l + k] -= s.alpha_tilde_fw[j] * s.alpha_tilde_covec[k];
      m.b[j] = (s.p - s.rho_pairing) * s.alpha_tilde_fw[j];
    }
  }
  return m;
}

std::vector<long long> apply_to(const AffMap& m, const std::vector<long long>& v) {
  const size_t l = v.size();
  std::vector<long long> out(m.b);
  for (size_t i = 0; i < l; ++i) {
    long long acc = 0;
    for (size_t j = 0; j < l; ++j) acc += m.a[i * l + j] * v[j];
    out[i] += acc;
  }
  return out;
}

AffMap compose(const AffMap& w, const AffMap& s, int l) {
  // T_{ws} = T_w o T_s
  AffMap out;
  out.b = apply_to(w, s.b);
  out.a.assign(static_cast<size_t>(l) * l, 0);
  for (int i = 0; i < l; ++i)
    for (int k = 0; k < l; ++k) {
      long long wv = w.a[static_cast<size_t>(i) * l + k];
      if (wv == 0) continue;
      for (int j = 0; j < l; ++j)
        out.a[static_cast<size_t>(i) * l + j] += wv * s.a[static_cast<size_t>(k) * l + j];
    }
  return out;
}

bool in_closed_box(const std::vector<long long>& wt, long long p) {
  for (long long x : wt)
    if (x < 0 || x > p) return false;
  return true;
}

bool in_half_open_box(const std::vector<long long>& wt, long long p) {
  for (long long x : wt)
    if (x < 0 || x >= p) return false;
  return true;
}

}  // namespace

RestrictedRegion enumerate_B(const AffineSetup& setup, const EnumerateOptions& opts) {
  const int l = setup.info.rank;
  const int ngen = l + 1;
  std::vector<AffMap> gens;
  gens.reserve(ngen);
  for (int g = 0; g < ngen; ++g) gens.push_back(gen_map(setup, g));

  // BFS over alcoves inside the closed box; the orbit of 0 is regular, so
  // weights key the visited set. Backtracking info (parent weight, letter)
  // reconstructs words for the members of B.
  struct Visit {
    std::vector<long long> parent;
    int gen;
  };
  std::map<std::vector<long long>, Visit> seen;
  std::deque<std::pair<AffMap, std::vector<long long>>> queue;

  std::vector<long long> zero(l, 0);
  seen.emplace(zero, Visit{{}, -1});
  AffMap id;
  id.a.assign(static_cast<size_t>(l) * l, 0);
  for (int i = 0; i < l; ++i) id.a[static_cast<size_t>(i) * l + i] = 1;
  id.b.assign(l, 0);
  queue.emplace_back(id, zero);

  std::vector<std::vector<long long>> b_weights;
  if (in_half_open_box(zero, setup.p)) b_weights.push_back(zero);

  while (!queue.empty()) {
    auto [w, wt] = std::move(queue.front());
    queue.pop_front();
    for (int g = 0; g < ngen; ++g) {
      std::vector<long long> wt2 = apply_to(w, gens[g].b);
      if (!in_closed_box(wt2, setup.p)) continue;
      if (seen.count(wt2)) continue;
      seen.emplace(wt2, Visit{wt, g});
      if (seen.size() > opts.safety_cap)
        throw LimitError("enumerate_B: exploration exceeded the safety cap");
      if (in_half_open_box(wt2, setup.p)) b_weights.push_back(wt2);
      queue.emplace_back(compose(w, gens[g], l), std::move(wt2));
    }
  }

  // reconstruct words, realize elements, find the longest member
  const auto& sys = *setup.affine;
  std::vector<std::vector<int>> words;
  std::vector<unsigned> lengths;
  words.reserve(b_weights.size());
  for (const auto& wt : b_weights) {
    std::vector<int> word;
    const std::vector<long long>* cur = &wt;
    while (true) {
      const Visit& v = seen.at(*cur);
      if (v.gen < 0) break;
      word.push_back(v.gen);
      cur = &v.parent;
    }
    std::reverse(word.begin(), word.end());
    words.push_back(std::move(word));
  }
  size_t longest = 0;
  unsigned best = 0;
  bool tie = false;
  std::vector<coxeter::CoxeterElement> elems;
  elems.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    elems.push_back(sys.from_word(words[i]));
    unsigned len = sys.length(elems.back());
    lengths.push_back(len);
    if (len > best) {
      best = len;
      longest = i;
      tie = false;
    } else if (len == best && i != longest) {
      tie = true;
    }
  }
  if (words.empty()) throw LimitError("enumerate_B: empty region (dot-action bug?)");
  if (tie)
    throw LimitError("enumerate_B: the longest element of B is not unique");

  RestrictedRegion region;
  region.setup = setup;
  auto sys_ptr = setup.affine;
  region.map = std::make_shared<bruhat::BruhatMap>(
      bruhat::build(sys_ptr, setup.finite_jmask(), elems[longest], opts.map_options));

  // locate the members of B inside the map by their weights
  std::map<std::vector<long long>, unsigned> member_len;
  for (size_t i = 0; i < b_weights.size(); ++i) member_len.emplace(b_weights[i], lengths[i]);
  for (uint32_t i = 1; i <= region.map->size(); ++i) {
    auto wt = setup.weight_of_word(region.map->word_of(i));
    if (!in_half_open_box(wt, setup.p)) continue;
    auto it = member_len.find(wt);
    if (it == member_len.end() || it->second != region.map->length(i))
      throw LimitError("enumerate_B: map/region weight mismatch (dot-action bug?)");
    region.members.push_back(RegionMember{i, std::move(wt), region.map->length(i)});
  }
  if (region.members.size() != b_weights.size())
    throw LimitError("enumerate_B: not every member of B lies below w'");
  for (size_t i = 0; i < region.members.size(); ++i) {
    if (region.members[i].length == best) region.w_prime = i;
  }
  return region;
}

bool RestrictedRegion::in_B(uint32_t map_index) const {
  auto it = std::lower_bound(
      members.begin(), members.end(), map_index,
      [](const RegionMember& m, uint32_t v) { return m.map_index < v; });
  return it != members.end() && it->map_index == map_index;
}

unsigned long long count_B(const AffineSetup& setup, uint64_t safety_cap) {
  const int l = setup.info.rank;
  const int ngen = l + 1;
  std::vector<AffMap> gens;
  for (int g = 0; g < ngen; ++g) gens.push_back(gen_map(setup, g));
  std::set<std::vector<long long>> seen;
  std::deque<std::pair<AffMap, std::vector<long long>>> queue;
  std::vector<long long> zero(l, 0);
  seen.insert(zero);
  AffMap id;
  id.a.assign(static_cast<size_t>(l) * l, 0);
  for (int i = 0; i < l; ++i) id.a[static_cast<size_t>(i) * l + i] = 1;
  id.b.assign(l, 0);
  queue.emplace_back(id, zero);
  unsigned long long count = in_half_open_box(zero, setup.p) ? 1 : 0;
  while (!queue.empty()) {
    auto [w, wt] = std::move(queue.front());
    queue.pop_front();
    for (int g = 0; g < ngen; ++g) {
      std::vector<long long> wt2 = apply_to(w, gens[g].b);
      if (!in_closed_box(wt2, setup.p)) continue;
      if (!seen.insert(wt2).second) continue;
      if (seen.size() > safety_cap)
        throw LimitError("count_B: exploration exceeded the safety cap");
      if (in_half_open_box(wt2, setup.p)) ++count;
      queue.emplace_back(compose(w, gens[g], l), std::move(wt2));
    }
  }
  return count;
}

Int dim_weyl(const rootdata::RootSystemInfo& info, const std::vector<long long>& lambda_fw) {
  for (long long x : lambda_fw)
    if (x < 0) throw ValidationError("dim_weyl: weight is not dominant");
  Int num(1), den(1);
  for (const auto& cor : info.pos_coroots) {
    long long a = 0, b = 0;
    for (int i = 0; i < info.rank; ++i) {
      a += (lambda_fw[i] + 1) * cor[i];
      b += cor[i];
    }
    num *= Int(a);
    den *= Int(b);
  }
  return num.divexact(den);
}

std::vector<std::pair<uint32_t, Int>> character_row(const solver::CanonicalElement& elem) {
  std::vector<std::pair<uint32_t, Int>> out;
  out.reserve(elem.polys.size());
  for (auto it = elem.polys.rbegin(); it != elem.polys.rend(); ++it)
    out.emplace_back(it->first, it->second.evaluate(-1));
  return out;
}

Int dim_simple(const RestrictedRegion& region, const AffineSetup& dim_setup,
               const solver::CanonicalElement& elem) {
  Int total(0);
  for (const auto& [y, f] : elem.polys) {
    auto wt = dim_setup.weight_of_word(region.map->word_of(y));
    total += f.evaluate(-1) * dim_weyl(dim_setup.info, wt);
  }
  return total;
}

Int h1_dimension(const solver::CanonicalElement& elem) {
  const laurent::LaurentPoly* f = elem.poly_of(1);
  return f ? f->mu() : Int(0);
}

laurent::LaurentPoly ext_poly(const solver::CanonicalElement& elem, uint32_t y) {
  const laurent::LaurentPoly* f = elem.poly_of(y);
  return f ? *f : laurent::LaurentPoly::zero(laurent::CoefficientRing::exact());
}

H1Table h1_table(const RestrictedRegion& region, solver::Solver& solver) {
  H1Table out;
  out.max = Int(0);
  for (const auto& m : region.members) {
    auto elem = solver.element(m.map_index);
    Int h1 = h1_dimension(elem);
    if (h1 > out.max) {
      out.max = h1;
      out.witnesses.clear();
    }
    if (h1 == out.max) out.witnesses.push_back(m.map_index);
  }
  return out;
}

std::vector<long long> parse_weight(const std::string& text, long long p, int rank) {
  std::vector<long long> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    // strip blanks
    std::string s;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ValidationError("weight: empty coordinate");
    // grammar: term (('+'|'-') term)* with term = integer | 'p'
    long long value = 0;
    size_t i = 0;
    int sign = 1;
    while (i < s.size()) {
      if (s[i] == '+') {
        sign = 1;
        ++i;
        continue;
      }
      if (s[i] == '-') {
        sign = -1;
        ++i;
        continue;
      }
      if (s[i] == 'p' || s[i] == 'P') {
        value += sign * p;
        sign = 1;
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ValidationError("weight: bad token in '" + tok + "'");
      long long n = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        n = n * 10 + (s[i] - '0');
        ++i;
      }
      value += sign * n;
      sign = 1;
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(out.size()) != rank)
    throw ValidationError("weight: expected " + std::to_string(rank) + " coordinates");
  return out;
}

}  // namespace klp::charform
