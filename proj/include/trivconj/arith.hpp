#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "trivconj/error.hpp"

namespace trivconj {

/// Residue of `a` modulo `m` in [0, m).
constexpr Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// Floor division for a possibly negative numerator.
constexpr Int floor_div(Int a, Int m) { return (a - floor_mod(a, m)) / m; }

inline std::optional<Int> checked_mul(Int a, Int b) {
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

inline std::optional<Int> checked_add(Int a, Int b) {
  Int out = 0;
  if (__builtin_add_overflow(a, b, &out)) return std::nullopt;
  return out;
}

inline Int lcm_checked(Int a, Int b) {
  auto v = checked_mul(a / std::gcd(a, b), b);
  if (!v) throw Unsupported("modulus overflow in lcm(" + std::to_string(a) + ", " + std::to_string(b) + ")");
  return *v;
}

inline std::optional<Int> checked_pow(Int base, Int exp) {
  Int out = 1;
  for (Int i = 0; i < exp; ++i) {
    auto next = checked_mul(out, base);
    if (!next) return std::nullopt;
    out = *next;
  }
  return out;
}

/// Product modulo m without intermediate overflow.
inline Int mul_mod(Int a, Int b, Int m) {
  return static_cast<Int>((static_cast<__int128>(a) * b) % m);
}

/// Largest r with r^e <= n, for n >= 1, e >= 1.
inline Int integer_root(Int n, Int e) {
  if (e == 1) return n;
  auto r = static_cast<Int>(std::pow(static_cast<long double>(n), 1.0L / static_cast<long double>(e)));
  if (r < 1) r = 1;
  auto fits = [&](Int c) {
    auto p = checked_pow(c, e);
    return p && *p <= n;
  };
  while (r > 1 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

/// Writes b = root^power with root not a perfect power. Requires b >= 2.
struct PowerDecomposition {
  Int root;
  Int power;
};

inline PowerDecomposition minimal_root(Int b) {
  for (Int e = 62; e >= 2; --e) {
    Int r = integer_root(b, e);
    if (r >= 2) {
      auto p = checked_pow(r, e);
      if (p && *p == b) return {r, e};
    }
  }
  return {b, 1};
}

}  // namespace trivconj
