#pragma once

// Brute-force machinery kept independent of the symbolic procedures: window
// simulation, exhaustive conjugator search in small symmetric groups,
// explicit conjugator construction, and seeded generators.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "trivconj/blockperm.hpp"
#include "trivconj/census.hpp"
#include "trivconj/cycletype.hpp"
#include "trivconj/nearbij.hpp"
#include "trivconj/window.hpp"

namespace trivconj {

/// Environment variable consulted for the default seed.
inline constexpr const char* kSeedVariable = "TRIVCONJ_SEED";
inline constexpr std::uint64_t kDefaultSeed = 20240611;

inline WindowMap window(const NearBijection& f, Int w) {
  if (w < 1) throw InvalidArgument("window size must be >= 1");
  WindowMap out{w, std::vector<WindowMap::Entry>(w)};
  for (Int n = 0; n < w; ++n) {
    auto v = f.apply(n);
    if (!v) out.entries[n] = {WindowMap::Kind::Undefined, 0};
    else if (*v >= w) out.entries[n] = {WindowMap::Kind::Escapes, *v};
    else out.entries[n] = {WindowMap::Kind::Mapped, *v};
  }
  return out;
}

inline WindowMap window(const BlockPermutation& p, Int w) { return window_of(p, w); }

/// A window past every threshold of f: all exceptional behaviour lies inside.
inline Int settled_window(const NearBijection& f) {
  return std::max(f.threshold(), f.range_threshold()) + f.excursion() + f.modulus() + 1;
}

/// h by counting, over a settled window, points never hit and points with no image.
inline Int window_h(const NearBijection& f) {
  const Int w = settled_window(f);
  const Int reach = w + f.excursion() + f.threshold() + 1;
  std::vector<bool> hit(w, false);
  Int missing_domain = 0;
  for (Int n = 0; n < reach; ++n) {
    auto v = f.apply(n);
    if (!v) {
      if (n < w) ++missing_domain;
      continue;
    }
    if (*v < w) hit[*v] = true;
  }
  return static_cast<Int>(std::count(hit.begin(), hit.end(), false)) - missing_domain;
}

// ---------------------------------------------------------------------------
// Finite symmetric groups

using FinitePermutation = std::vector<Int>;

inline constexpr Int kSearchBound = 8;

inline bool is_permutation_of_range(std::span<const Int> p) {
  std::vector<bool> seen(p.size(), false);
  for (Int v : p) {
    if (v < 0 || v >= static_cast<Int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// Some pi with pi^-1 q pi = p, by trying all of S_n.
inline std::optional<FinitePermutation> finite_conjugacy_search(std::span<const Int> p, std::span<const Int> q) {
  if (p.size() != q.size()) throw InvalidArgument("permutations of different degrees");
  if (static_cast<Int>(p.size()) > kSearchBound)
    throw BoundExceeded("degree " + std::to_string(p.size()) + " exceeds " + std::to_string(kSearchBound));
  if (!is_permutation_of_range(p) || !is_permutation_of_range(q)) throw InvalidArgument("not a permutation");
  FinitePermutation pi(p.size());
  std::iota(pi.begin(), pi.end(), Int{0});
  do {
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i) ok = q[pi[i]] == pi[p[i]];
    if (ok) return pi;
  } while (std::next_permutation(pi.begin(), pi.end()));
  return std::nullopt;
}

/// p on [0, n), identity beyond.
inline NearBijection embed(std::span<const Int> p) {
  NearBijectionDraft d;
  d.threshold = static_cast<Int>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d.exceptions.emplace(static_cast<Int>(i), p[i]);
  return NearBijection::validate(d);
}

// ---------------------------------------------------------------------------
// Conjugator construction

namespace detail {

struct TailSearch {
  const NearBijection& phi;
  const NearBijection& psi;
  Int modulus;
  Int reach;
  std::vector<std::vector<Int>> cycles;  // residue cycles of psi lifted to `modulus`
  std::vector<std::optional<Int>> shift;
  std::vector<bool> target_used;
  Int budget = 2'000'000;

  TailSearch(const NearBijection& f, const NearBijection& g, Int m, Int k)
      : phi(f), psi(g), modulus(m), reach(k), shift(m), target_used(m, false) {
    std::vector<bool> done(m, false);
    for (Int r = 0; r < m; ++r) {
      if (done[r]) continue;
      std::vector<Int> cyc;
      for (Int s = r; !done[s]; s = floor_mod(s + psi.shift_of_class(s), m)) {
        done[s] = true;
        cyc.push_back(s);
      }
      cycles.push_back(std::move(cyc));
    }
  }

  // Assign shift c at the first residue of cycle i and propagate
  // c(succ r) = c(r) + phi_shift(r + c(r)) - psi_shift(r).
  bool place(std::size_t i, Int c, std::vector<Int>& placed) {
    const auto& cyc = cycles[i];
    Int cur = c;
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      Int r = cyc[j];
      Int target = floor_mod(r + cur, modulus);
      if (target_used[target]) return false;
      target_used[target] = true;
      shift[r] = cur;
      placed.push_back(r);
      cur = cur + phi.shift_of_class(r + cur) - psi.shift_of_class(r);
    }
    return cur == c;
  }

  void unplace(std::vector<Int>& placed) {
    for (Int r : placed) {
      target_used[floor_mod(r + *shift[r], modulus)] = false;
      shift[r].reset();
    }
    placed.clear();
  }

  bool solve(std::size_t i) {
    if (i == cycles.size()) return true;
    for (Int k = 0; k <= 2 * reach; ++k) {
      if (--budget < 0) return false;
      Int c = (k % 2 == 0) ? -(k / 2) : (k + 1) / 2;
      std::vector<Int> placed;
      if (place(i, c, placed) && solve(i + 1)) return true;
      unplace(placed);
    }
    return false;
  }
};

}  // namespace detail

/// Searches for a tail conjugator tau with phi o tau =* tau o psi. Throws
/// NoCertificate when the criterion already refutes conjugacy or the bounded
/// search finds nothing; the latter is not a proof of non-conjugacy.
inline NearBijection build_conjugator(const NearBijection& phi, const NearBijection& psi) {
  auto verdict = triv_criterion(from_census(orbit_census(phi)), from_census(orbit_census(psi)));
  if (verdict.kind == TrivVerdict::Kind::NonConjugate) throw NoCertificate("criterion fails: " + verdict.detail);
  const Int base = lcm_checked(phi.modulus(), psi.modulus());
  Int widest = 0;
  for (const auto* f : {&phi, &psi})
    for (Int c : f->shifts()) widest = std::max(widest, c < 0 ? -c : c);
  for (Int mult = 1; mult <= 4 && base * mult <= 48; ++mult) {
    const Int m = base * mult;
    detail::TailSearch search(phi, psi, m, 2 * m + 2 * widest);
    if (!search.solve(0)) continue;
    NearBijectionDraft d;
    d.modulus = m;
    d.shifts.resize(m);
    Int lowest = 0;
    for (Int r = 0; r < m; ++r) {
      d.shifts[r] = *search.shift[r];
      lowest = std::min(lowest, d.shifts[r]);
    }
    d.threshold = -lowest;
    auto tau = NearBijection::validate(d);
    if (verify_conjugation(phi, psi, tau).equal) return tau;
  }
  throw NoCertificate("no tail conjugator with modulus <= " + std::to_string(std::min<Int>(48, base * 4)));
}

// ---------------------------------------------------------------------------
// Seeded generators

struct GeneratorLimits {
  Int max_modulus = 4;
  Int max_lift = 2;       // shifts are residue moves plus lift * modulus
  Int max_threshold = 10;
};

/// A random valid near-bijection with an affine tail.
template <class Rng>
NearBijection random_near_bijection(Rng& rng, const GeneratorLimits& lim = {}) {
  auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  for (;;) {
    const Int m = pick(1, lim.max_modulus);
    std::vector<Int> perm(m);
    std::iota(perm.begin(), perm.end(), Int{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    NearBijectionDraft d;
    d.modulus = m;
    d.shifts.resize(m);
    Int lowest = 0;
    for (Int r = 0; r < m; ++r) {
      d.shifts[r] = perm[r] - r + m * pick(-lim.max_lift, lim.max_lift);
      lowest = std::min(lowest, d.shifts[r]);
    }
    d.threshold = std::max(-lowest, pick(0, lim.max_threshold));
    NearBijection tail_only = NearBijection::validate(d);
    // Table below the threshold: a random injection into the targets the tail leaves free.
    auto free_targets = tail_only.range_complement();
    std::shuffle(free_targets.begin(), free_targets.end(), rng);
    std::size_t next = 0;
    for (Int n = 0; n < d.threshold; ++n) {
      if (next < free_targets.size() && pick(0, 4) != 0) d.exceptions.emplace(n, free_targets[next++]);
    }
    try {
      return NearBijection::validate(d);
    } catch (const Error&) {
      continue;
    }
  }
}

/// g equal to f off a finite set, after up to `budget` random edits
/// (swaps, removals, additions, redirections) below a widened threshold.
inline NearBijection random_finite_modification(const NearBijection& f, std::uint64_t seed, Int budget) {
  if (budget < 0) throw InvalidArgument("budget must be >= 0");
  if (budget == 0) return f;
  std::mt19937_64 rng(seed);
  auto pick = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };
  const Int top = f.threshold() + f.modulus() + f.excursion() + pick(1, 6);
  std::map<Int, std::optional<Int>> table;
  for (Int n = 0; n < top; ++n) table[n] = f.apply(n);

  // Values no longer hit once everything below `top` is reassigned.
  auto tail_hits = [&](Int v) {
    Int r = f.residue_source(v);
    return v - f.shifts()[r] >= top;
  };
  const Int value_reach = top + f.excursion() + f.modulus();
  auto free_values = [&]() {
    std::set<Int> used;
    for (const auto& [a, b] : table)
      if (b) used.insert(*b);
    std::vector<Int> out;
    for (Int v = 0; v < value_reach; ++v)
      if (!used.count(v) && !tail_hits(v)) out.push_back(v);
    return out;
  };

  for (Int step = 0; step < budget; ++step) {
    std::vector<Int> in_dom, out_dom;
    for (const auto& [a, b] : table) (b ? in_dom : out_dom).push_back(a);
    auto free = free_values();
    switch (pick(0, 3)) {
      case 0:
        if (in_dom.size() >= 2) {
          Int a = in_dom[pick(0, in_dom.size() - 1)], b = in_dom[pick(0, in_dom.size() - 1)];
          std::swap(table[a], table[b]);
        }
        break;
      case 1:
        if (!in_dom.empty()) table[in_dom[pick(0, in_dom.size() - 1)]].reset();
        break;
      case 2:
        if (!out_dom.empty() && !free.empty()) table[out_dom[pick(0, out_dom.size() - 1)]] = free[pick(0, free.size() - 1)];
        break;
      default:
        if (!in_dom.empty() && !free.empty()) table[in_dom[pick(0, in_dom.size() - 1)]] = free[pick(0, free.size() - 1)];
        break;
    }
  }
  NearBijectionDraft d;
  d.threshold = top;
  d.modulus = f.modulus();
  d.shifts = f.shifts();
  for (const auto& [a, b] : table)
    if (b) d.exceptions.emplace(a, *b);
  return NearBijection::validate(d);
}

}  // namespace trivconj
