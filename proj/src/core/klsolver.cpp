#include "core/klsolver.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <list>
#include <map>
#include <thread>
#include <unordered_map>

#include "core/primes.hpp"

#ifdef NDEBUG
#define KLP_DEBUG_ASSERT(x) ((void)0)
#else
#define KLP_DEBUG_ASSERT(x) assert(x)
#endif

namespace klp::solver {

using Row = std::vector<std::pair<uint32_t, LaurentPoly>>;  // index descending

const LaurentPoly* CanonicalElement::poly_of(uint32_t y) const {
  auto it = std::lower_bound(
      polys.begin(), polys.end(), y,
      [](const auto& t, uint32_t v) { return t.first > v; });
  if (it != polys.end() && it->first == y) return &it->second;
  return nullptr;
}

std::vector<uint64_t> default_moduli(unsigned length) {
  std::vector<uint64_t> out;
  Int prod(1);
  const Int bound = Int::pow2(length);
  uint64_t p = 1ull << 62;
  while (!(prod > bound)) {
    p = primes::prev_prime_below(p);
    out.push_back(p);
    prod *= Int(static_cast<unsigned long long>(p));
  }
  return out;
}

// Per-ring engine: runs the canonicalization for one coefficient ring.
struct Solver::Core {
  const bruhat::BruhatMap& map;
  CoefficientRing ring;
  const SolverConfig& cfg;
  LaurentPoly one, v_plus_vinv;

  // recursive cache (strategy Recursive), rows 1..upto filled
  std::vector<Row> rows;
  uint32_t upto = 0;

  // hybrid LRU cache of canonical rows
  std::list<uint32_t> recency;  // front = most recently used
  struct LruEntry {
    Row row;
    size_t bytes;
    std::list<uint32_t>::iterator pos;
  };
  std::unordered_map<uint32_t, LruEntry> lru;
  size_t lru_bytes = 0;

  Core(const bruhat::BruhatMap& m, CoefficientRing r, const SolverConfig& c)
      : map(m), ring(r), cfg(c) {
    one = LaurentPoly::constant(Int(1), ring);
    v_plus_vinv = LaurentPoly::from_terms({{1, Int(1)}, {-1, Int(1)}}, ring);
    if (cfg.strategy == Strategy::Recursive) rows.resize(map.size());
  }

  static size_t row_bytes(const Row& r) {
    size_t b = sizeof(Row);
    for (const auto& [i, f] : r) b += sizeof(f) + sizeof(i) + 16 * f.coeff_count() + 32;
    return b;
  }

  // position of x' = x s with l(x') = l(x) - 1, choosing the smallest
  // generator index among the right descents (all stay in W^J)
  std::pair<uint32_t, int> parent_step(uint32_t x) const {
    for (int s = 0; s < map.rank(); ++s) {
      int32_t e = map.raw_entry(x, s);
      if (e > 0 && map.length(static_cast<uint32_t>(e)) < map.length(x))
        return {static_cast<uint32_t>(e), s};
    }
    throw ValidationError("solver: no descent found (corrupt map?)");
  }

  // dense = row * C_s; dense is indexed by map position - 1 and sized cap
  std::vector<LaurentPoly> act_row(const Row& src, int s, uint32_t cap) const {
    std::vector<LaurentPoly> out(cap, LaurentPoly(ring));
    const Int unit(1);
    for (const auto& [y, f] : src) {
      auto st = map.step(y, s);
      switch (st.kind) {
        case bruhat::StepKind::Inside: {
          KLP_DEBUG_ASSERT(st.index <= cap);
          laurent::accumulate(out[st.index - 1], f, 0, unit);
          bool longer = map.length(st.index) > map.length(y);
          laurent::accumulate(out[y - 1], f, longer ? 1 : -1, unit);
          break;
        }
        case bruhat::StepKind::NotInQuotient:
          laurent::accumulate(out[y - 1], f, 1, unit);
          laurent::accumulate(out[y - 1], f, -1, unit);
          break;
        case bruhat::StepKind::Outside:
          throw ValidationError("solver: action escapes the interval");
      }
    }
    return out;
  }

  static Row compress(std::vector<LaurentPoly>& dense) {
    Row out;
    for (uint32_t i = static_cast<uint32_t>(dense.size()); i > 0; --i) {
      if (!dense[i - 1].is_zero()) out.emplace_back(i, std::move(dense[i - 1]));
    }
    return out;
  }

  static std::vector<LaurentPoly> to_dense(const Row& row, uint32_t cap,
                                           CoefficientRing ring) {
    std::vector<LaurentPoly> out(cap, LaurentPoly(ring));
    for (const auto& [i, f] : row) out[i - 1] = f;
    return out;
  }

  // Lemma-style chain element for position y, built along the parent path;
  // memoized per canonicalization call.
  const Row& chain(uint32_t y, std::map<uint32_t, Row>& memo, BVariant variant) {
    auto it = memo.find(y);
    if (it != memo.end()) return it->second;
    // build the ancestor path down to the first memoized element
    std::vector<uint32_t> path;
    uint32_t cur = y;
    while (memo.find(cur) == memo.end() && cur != 1) {
      path.push_back(cur);
      cur = map.parent(cur).first;
    }
    if (cur == 1 && memo.find(1) == memo.end())
      memo.emplace(1, Row{{1, one}});
    const Int neg_one = ring.neg(Int(1));
    for (auto p = path.rbegin(); p != path.rend(); ++p) {
      auto [par, gen] = map.parent(*p);
      const Row& prev = memo.at(par);
      auto dense = act_row(prev, gen, *p);
      if (variant == BVariant::BPrime) {
        // subtract (v + v^{-1}) * prev
        for (const auto& [z, g] : prev) {
          laurent::accumulate(dense[z - 1], g, 1, neg_one);
          laurent::accumulate(dense[z - 1], g, -1, neg_one);
        }
      }
      memo.emplace(*p, compress(dense));
    }
    return memo.at(y);
  }

  // One canonicalization: repeatedly clear all offenders of maximal length.
  // provider(y) must return a bar-invariant element with unitriangular
  // leading term M_y.
  void correct(std::vector<LaurentPoly>& u, uint32_t x,
               const std::function<const Row&(uint32_t)>& provider,
               bool recursive_mode) {
    long long last_len = -1;
    for (;;) {
      long long max_len = -1;
      for (uint32_t i = 1; i < x; ++i) {
        const auto& f = u[i - 1];
        if (!f.is_zero() && !f.is_in_vZv()) {
          long long l = map.length(i);
          if (l > max_len) max_len = l;
        }
      }
      if (max_len < 0) break;
      KLP_DEBUG_ASSERT(last_len < 0 || max_len < last_len);
      last_len = max_len;
      std::vector<uint32_t> offenders;
      std::vector<LaurentPoly> neg_syms;
      for (uint32_t i = 1; i < x; ++i) {
        const auto& f = u[i - 1];
        if (!f.is_zero() && !f.is_in_vZv() &&
            static_cast<long long>(map.length(i)) == max_len) {
          offenders.push_back(i);
          auto parts = f.sym_decompose();
          if (recursive_mode) {
            // under the pure recursive strategy the offending coefficients
            // are genuine polynomials, so f^sym is the constant f(0)
            KLP_DEBUG_ASSERT(f.valuation() >= 0);
            KLP_DEBUG_ASSERT(parts.f_sym == LaurentPoly::constant(parts.f0, ring));
          }
          neg_syms.push_back(-parts.f_sym);
        }
      }
      // prefetch provider rows serially (may build chains)
      std::vector<const Row*> prov(offenders.size());
      for (size_t i = 0; i < offenders.size(); ++i) prov[i] = &provider(offenders[i]);

      unsigned workers = std::min<size_t>(cfg.workers, offenders.size());
      if (workers <= 1) {
        for (size_t i = 0; i < offenders.size(); ++i)
          subtract_scaled(u, *prov[i], neg_syms[i]);
      } else {
        // compute the scaled products in parallel, join in index order
        std::vector<Row> products(offenders.size());
        std::atomic<size_t> next{0};
        auto work = [&]() {
          for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= offenders.size()) return;
            Row p;
            p.reserve(prov[i]->size());
            for (const auto& [z, g] : *prov[i]) {
              LaurentPoly prod = g * neg_syms[i];
              if (!prod.is_zero()) p.emplace_back(z, std::move(prod));
            }
            products[i] = std::move(p);
          }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
        const Int unit(1);
        for (auto& p : products)
          for (auto& [z, g] : p) laurent::accumulate(u[z - 1], g, 0, unit);
      }
    }
    KLP_DEBUG_ASSERT(u[x - 1] == one);
  }

  void subtract_scaled(std::vector<LaurentPoly>& u, const Row& row,
                       const LaurentPoly& neg_sym) const {
    bool constant = neg_sym.coeff_count() == 1 && neg_sym.valuation() == 0;
    if (constant) {
      const Int c = neg_sym.coeffs()[0];
      for (const auto& [z, g] : row) laurent::accumulate(u[z - 1], g, 0, c);
    } else {
      const Int unit(1);
      for (const auto& [z, g] : row) {
        LaurentPoly prod = g * neg_sym;
        laurent::accumulate(u[z - 1], prod, 0, unit);
      }
    }
  }

  Row compute_row(uint32_t x) {
    if (x == 1) return Row{{1, one}};
    switch (cfg.strategy) {
      case Strategy::Recursive: {
        auto [par, s] = parent_step(x);
        KLP_DEBUG_ASSERT(par <= upto);
        auto u = act_row(rows[par - 1], s, x);
        correct(u, x, [&](uint32_t y) -> const Row& { return rows[y - 1]; },
                /*recursive_mode=*/true);
        return compress(u);
      }
      case Strategy::FromScratch: {
        std::map<uint32_t, Row> memo;
        const Row& cx = chain(x, memo, cfg.b_variant);
        auto u = to_dense(cx, x, ring);
        correct(u, x,
                [&](uint32_t y) -> const Row& { return chain(y, memo, cfg.b_variant); },
                false);
        return compress(u);
      }
      case Strategy::Hybrid: {
        std::map<uint32_t, Row> memo;
        std::vector<LaurentPoly> u;
        auto [par, s] = parent_step(x);
        if (auto it = lru.find(par); it != lru.end()) {
          touch(it);
          u = act_row(it->second.row, s, x);
        } else {
          u = to_dense(chain(x, memo, BVariant::BPrime), x, ring);
        }
        correct(u, x,
                [&](uint32_t y) -> const Row& {
                  if (auto it = lru.find(y); it != lru.end()) {
                    touch(it);
                    return it->second.row;
                  }
                  return chain(y, memo, BVariant::BPrime);
                },
                false);
        Row out = compress(u);
        lru_insert(x, out);
        return out;
      }
    }
    throw ValidationError("solver: unknown strategy");
  }

  void touch(std::unordered_map<uint32_t, LruEntry>::iterator it) {
    recency.erase(it->second.pos);
    recency.push_front(it->first);
    it->second.pos = recency.begin();
  }

  void lru_insert(uint32_t x, const Row& row) {
    size_t b = row_bytes(row);
    if (b > cfg.hybrid_cache_bytes) return;
    recency.push_front(x);
    lru.emplace(x, LruEntry{row, b, recency.begin()});
    lru_bytes += b;
    while (lru_bytes > cfg.hybrid_cache_bytes && !recency.empty()) {
      uint32_t victim = recency.back();
      recency.pop_back();
      auto it = lru.find(victim);
      lru_bytes -= it->second.bytes;
      lru.erase(it);
    }
  }

  void ensure_upto(uint32_t x) {
    KLP_DEBUG_ASSERT(cfg.strategy == Strategy::Recursive);
    while (upto < x) {
      uint32_t nxt = upto + 1;
      rows[nxt - 1] = compute_row(nxt);
      upto = nxt;
    }
  }

  // The canonical row for x over this ring.
  Row row_for(uint32_t x) {
    if (cfg.strategy == Strategy::Recursive) {
      ensure_upto(x);
      return rows[x - 1];
    }
    return compute_row(x);
  }

  const Row& row_for_ref(uint32_t x) {
    if (cfg.strategy == Strategy::Recursive) {
      ensure_upto(x);
      return rows[x - 1];
    }
    scratch_ = compute_row(x);
    return scratch_;
  }

  void seed(uint32_t x, Row row) {
    if (cfg.strategy == Strategy::Recursive) {
      if (x != upto + 1)
        throw ValidationError("solver: cached rows must be seeded contiguously from 1");
      rows[x - 1] = std::move(row);
      upto = x;
    } else if (cfg.strategy == Strategy::Hybrid) {
      lru_insert(x, row);
    }
  }

  Row scratch_;
};

Solver::Solver(const bruhat::BruhatMap& map, SolverConfig cfg)
    : map_(map), cfg_(std::move(cfg)), moduli_product_(1) {
  if (cfg_.workers == 0) cfg_.workers = 1;
  if (cfg_.moduli.empty()) {
    cores_.push_back(std::make_unique<Core>(map_, CoefficientRing::exact(), cfg_));
  } else {
    for (uint64_t m : cfg_.moduli) {
      cores_.push_back(std::make_unique<Core>(map_, CoefficientRing::residue(m), cfg_));
      moduli_product_ *= Int(static_cast<unsigned long long>(m));
    }
  }
}

Solver::~Solver() = default;

CanonicalElement Solver::element(uint32_t x_index) {
  if (x_index < 1 || x_index > map_.size())
    throw ValidationError("solver: index out of bounds");
  if (cfg_.moduli.empty()) {
    CanonicalElement out;
    out.x_index = x_index;
    out.polys = cores_[0]->row_for(x_index);
    return out;
  }
  if (cfg_.check_bound && !(moduli_product_ > Int::pow2(map_.length(x_index))))
    throw LimitError(
        "solver: product of moduli does not exceed the 2^l(x) coefficient bound");
  return combine(x_index);
}

CanonicalElement Solver::combine(uint32_t x_index) {
  // union of supports; a position missing from one residue run means the
  // modulus divides that coefficient, so it contributes residue 0
  const size_t k = cores_.size();
  std::vector<const Row*> rows(k);
  for (size_t i = 0; i < k; ++i) rows[i] = &cores_[i]->row_for_ref(x_index);

  std::map<uint32_t, std::vector<const LaurentPoly*>> support;
  for (size_t i = 0; i < k; ++i) {
    for (const auto& [y, f] : *rows[i]) {
      auto it = support.find(y);
      if (it == support.end()) {
        it = support.emplace(y, std::vector<const LaurentPoly*>(k, nullptr)).first;
      }
      it->second[i] = &f;
    }
  }
  CanonicalElement out;
  out.x_index = x_index;
  const auto exact = CoefficientRing::exact();
  for (auto it = support.rbegin(); it != support.rend(); ++it) {
    int lo = 0, hi = 0;
    bool any = false;
    for (const auto* f : it->second) {
      if (!f || f->is_zero()) continue;
      lo = any ? std::min(lo, f->valuation()) : f->valuation();
      hi = any ? std::max(hi, f->max_exponent()) : f->max_exponent();
      any = true;
    }
    if (!any) continue;
    std::vector<std::pair<int, Int>> terms;
    for (int e = lo; e <= hi; ++e) {
      std::vector<std::pair<uint64_t, uint64_t>> residues;
      residues.reserve(k);
      bool nonzero = false;
      for (size_t i = 0; i < k; ++i) {
        const auto* f = it->second[i];
        Int c = f ? f->coefficient_at(e) : Int(0);
        uint64_t r = static_cast<uint64_t>(c.as_i64());
        residues.emplace_back(r, cfg_.moduli[i]);
        nonzero = nonzero || r != 0;
      }
      if (!nonzero) continue;
      terms.emplace_back(e, laurent::crt_combine(residues));
    }
    LaurentPoly f = LaurentPoly::from_terms(terms, exact);
    if (!f.is_zero()) out.polys.emplace_back(it->first, std::move(f));
  }
  return out;
}

void Solver::all_canonical(const std::function<void(const CanonicalElement&)>& sink) {
  for (uint32_t x = 1; x <= map_.size(); ++x) {
    CanonicalElement e = element(x);
    sink(e);
  }
}

void Solver::put_cached(const CanonicalElement& row) {
  if (cfg_.moduli.empty()) {
    Row r(row.polys.begin(), row.polys.end());
    cores_[0]->seed(row.x_index, std::move(r));
    return;
  }
  for (size_t i = 0; i < cores_.size(); ++i) {
    auto ring = CoefficientRing::residue(cfg_.moduli[i]);
    Row r;
    r.reserve(row.polys.size());
    for (const auto& [y, f] : row.polys) {
      std::vector<std::pair<int, Int>> terms;
      f.for_each_term([&](int e, const Int& c) { terms.emplace_back(e, c); });
      LaurentPoly g = LaurentPoly::from_terms(terms, ring);
      if (!g.is_zero()) r.emplace_back(y, std::move(g));
    }
    cores_[i]->seed(row.x_index, std::move(r));
  }
}

uint32_t Solver::cached_upto() const {
  uint32_t m = cores_[0]->upto;
  for (const auto& c : cores_) m = std::min(m, c->upto);
  return m;
}

}  // namespace klp::solver
