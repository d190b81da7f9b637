#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trivconj/trivconj.hpp"

namespace testing_support {

using trivconj::Int;
using trivconj::NearBijection;

inline std::uint64_t seed() {
  if (const char* s = std::getenv(trivconj::kSeedVariable)) return std::stoull(s);
  return trivconj::kDefaultSeed;
}

inline NearBijection nb(const std::string& text) {
  return std::get<NearBijection>(trivconj::parse(text).definitions.back().object);
}

inline trivconj::SetSpec set(const std::string& text) {
  return std::get<trivconj::SetSpec>(trivconj::parse(text).definitions.back().object);
}

inline const NearBijection sigma = nb("nearbij { tail from 0 mod 1 { 0: +1 } }");
inline const NearBijection sigma_inv = nb("nearbij { tail from 1 mod 1 { 0: -1 } }");
inline const NearBijection pairing = nb("nearbij { tail from 0 mod 2 { 0: +1; 1: -1 } }");

// Orbit structure of f computed by walking points one at a time. Every orbit
// through [0, w) is followed until it closes, leaves [0, reach) moving away,
// or stops; the classification is exact once w and reach are far enough past
// every threshold of f.
struct BruteCensus {
  std::map<Int, Int> cycles;  // only lengths below w
  Int z_orbits = 0, fwd = 0, bwd = 0, paths = 0;
};

inline BruteCensus brute_census(const NearBijection& f, Int w, Int reach) {
  std::map<Int, Int> pre;
  for (Int n = 0; n < reach + 64; ++n)
    if (auto v = f.apply(n)) pre[*v] = n;
  auto fwd = [&](Int n) { return f.apply(n); };
  auto bwd = [&](Int n) -> std::optional<Int> {
    auto it = pre.find(n);
    if (it == pre.end()) return std::nullopt;
    return it->second;
  };
  BruteCensus out;
  std::set<Int> seen;
  for (Int n = 0; n < w; ++n) {
    if (seen.count(n)) continue;
    std::vector<Int> orbit{n};
    seen.insert(n);
    bool closed = false, escapes_f = false, escapes_b = false;
    Int q = n;
    for (;;) {
      auto v = fwd(q);
      if (!v) break;
      if (*v == n) {
        closed = true;
        break;
      }
      if (*v >= reach) {
        escapes_f = true;
        break;
      }
      q = *v;
      seen.insert(q);
      orbit.push_back(q);
    }
    if (closed) {
      if (static_cast<Int>(orbit.size()) < w) ++out.cycles[static_cast<Int>(orbit.size())];
      continue;
    }
    q = n;
    for (;;) {
      auto v = bwd(q);
      if (!v) break;
      if (*v >= reach) {
        escapes_b = true;
        break;
      }
      q = *v;
      seen.insert(q);
    }
    if (escapes_f && escapes_b) ++out.z_orbits;
    else if (escapes_f) ++out.fwd;
    else if (escapes_b) ++out.bwd;
    else ++out.paths;
  }
  return out;
}

// |N \ ran f| - |N \ dom f| by scanning [0, w); correct once w is past all
// thresholds and all tail preimages of [0, w) lie below `reach`.
inline Int scan_h(const NearBijection& f, Int w, Int reach) {
  std::vector<bool> hit(w, false);
  Int missing = 0;
  for (Int n = 0; n < reach; ++n) {
    auto v = f.apply(n);
    if (!v) {
      if (n < w) ++missing;
    } else if (*v < w) {
      hit[*v] = true;
    }
  }
  Int unhit = 0;
  for (bool b : hit) unhit += !b;
  return unhit - missing;
}

inline Int far_window(const NearBijection& f) {
  return 4 * (f.threshold() + f.range_threshold() + f.excursion() + f.modulus()) + 16;
}

}  // namespace testing_support
