#pragma once

// Bijections between cofinite subsets of N, represented as a finite table
// below a threshold plus an affine tail n -> n + shift[n mod modulus].

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "trivconj/arith.hpp"
#include "trivconj/error.hpp"

namespace trivconj {

/// Unvalidated description of a near-bijection, as written in the DSL.
/// Points below `threshold` without an exception entry are outside the
/// domain; an entry with no value removes the point explicitly, which also
/// works at or above the threshold.
struct NearBijectionDraft {
  std::map<Int, std::optional<Int>> exceptions;
  Int threshold = 0;
  Int modulus = 1;
  std::vector<Int> shifts{0};
};

class NearBijection {
 public:
  /// The identity of N.
  NearBijection() = default;

  /// Checks every invariant and returns the normal form: minimal modulus,
  /// minimal threshold, table of the points below the threshold.
  static NearBijection validate(const NearBijectionDraft& raw) {
    if (raw.modulus < 1) throw InvalidArgument("tail modulus must be >= 1");
    if (static_cast<Int>(raw.shifts.size()) != raw.modulus)
      throw InvalidArgument("tail needs one shift per residue class (" + std::to_string(raw.modulus) + ")");
    const Int m = raw.modulus;
    std::vector<Int> owner(m, -1);
    for (Int r = 0; r < m; ++r) {
      Int s = floor_mod(r + raw.shifts[r], m);
      if (owner[s] >= 0) throw InvalidResiduePermutation(owner[s], r);
      owner[s] = r;
    }
    if (raw.threshold < 0) throw InvalidArgument("tail threshold must be >= 0");

    NearBijection f;
    f.modulus_ = m;
    f.shifts_ = raw.shifts;
    f.threshold_ = raw.threshold;
    for (const auto& [a, b] : raw.exceptions) {
      if (a < 0) throw InvalidArgument("exception source " + std::to_string(a) + " is negative");
      f.threshold_ = std::max(f.threshold_, a + 1);
    }
    for (Int n = 0; n < f.threshold_; ++n) {
      if (auto it = raw.exceptions.find(n); it != raw.exceptions.end()) {
        if (!it->second) continue;
        if (*it->second < 0) throw NegativeImage(n);
        f.table_.emplace(n, *it->second);
      } else if (n >= raw.threshold) {
        Int v = n + raw.shifts[floor_mod(n, m)];
        if (v < 0) throw NegativeImage(n);
        f.table_.emplace(n, v);
      }
    }
    for (Int r = 0; r < m; ++r) {
      Int n0 = f.first_tail_point(r);
      if (n0 + f.shifts_[r] < 0) throw NegativeImage(n0);
    }
    f.residue_source_ = owner;

    std::map<Int, Int> image_owner;
    for (const auto& [a, b] : f.table_) {
      auto [it, fresh] = image_owner.emplace(b, a);
      if (!fresh) throw InjectivityViolation(it->second, a);
      if (auto src = f.tail_preimage(b)) throw InjectivityViolation(a, *src);
    }
    f.normalize();
    return f;
  }

  /// n -> n + k on N (k >= 0) or on {n >= -k} (k < 0).
  static NearBijection shift(Int k) {
    NearBijectionDraft d;
    d.threshold = k < 0 ? -k : 0;
    d.shifts = {k};
    return validate(d);
  }

  std::optional<Int> apply(Int n) const {
    if (n < 0) return std::nullopt;
    if (n < threshold_) {
      auto it = table_.find(n);
      if (it == table_.end()) return std::nullopt;
      return it->second;
    }
    return n + shifts_[floor_mod(n, modulus_)];
  }

  Int threshold() const { return threshold_; }
  Int modulus() const { return modulus_; }
  const std::vector<Int>& shifts() const { return shifts_; }
  Int shift_of_class(Int r) const { return shifts_[floor_mod(r, modulus_)]; }
  /// Entries for points below the threshold that lie in the domain.
  const std::map<Int, Int>& table() const { return table_; }

  /// Residue class r' whose tail lands in class s.
  Int residue_source(Int s) const { return residue_source_[floor_mod(s, modulus_)]; }

  /// Smallest tail point of class r.
  Int first_tail_point(Int r) const { return threshold_ + floor_mod(r - threshold_, modulus_); }

  /// Every point at or above this bound is the image of a tail point.
  Int range_threshold() const {
    Int t = 0;
    for (Int r = 0; r < modulus_; ++r) t = std::max(t, first_tail_point(r) + shifts_[r]);
    return t;
  }

  /// Sum of |shift| over residues; bounds every partial sum along a residue cycle.
  Int excursion() const {
    Int a = 0;
    for (Int c : shifts_) a += c < 0 ? -c : c;
    return a;
  }

  std::vector<Int> domain_complement() const {
    std::vector<Int> out;
    for (Int n = 0; n < threshold_; ++n)
      if (!table_.count(n)) out.push_back(n);
    return out;
  }

  std::vector<Int> range_complement() const {
    std::vector<Int> targets;
    for (const auto& [a, b] : table_) targets.push_back(b);
    std::sort(targets.begin(), targets.end());
    std::vector<Int> out;
    for (Int s = 0; s < modulus_; ++s) {
      Int r = residue_source_[s];
      Int first_image = first_tail_point(r) + shifts_[r];
      for (Int k = s; k < first_image; k += modulus_)
        if (!std::binary_search(targets.begin(), targets.end(), k)) out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const NearBijection&) const = default;

 private:
  std::optional<Int> tail_preimage(Int b) const {
    Int r = residue_source_[floor_mod(b, modulus_)];
    Int n = b - shifts_[r];
    if (n >= threshold_) return n;
    return std::nullopt;
  }

  void normalize() {
    for (Int d = 1; d < modulus_; ++d) {
      if (modulus_ % d != 0) continue;
      bool periodic = true;
      for (Int r = 0; r + d < modulus_ && periodic; ++r) periodic = shifts_[r] == shifts_[r + d];
      if (periodic) {
        shifts_.resize(d);
        modulus_ = d;
        break;
      }
    }
    while (threshold_ > 0) {
      Int n = threshold_ - 1;
      auto it = table_.find(n);
      if (it == table_.end() || it->second != n + shifts_[floor_mod(n, modulus_)]) break;
      table_.erase(it);
      --threshold_;
    }
    residue_source_.assign(modulus_, 0);
    for (Int r = 0; r < modulus_; ++r) residue_source_[floor_mod(r + shifts_[r], modulus_)] = r;
  }

  Int threshold_ = 0;
  Int modulus_ = 1;
  std::vector<Int> shifts_{0};
  std::map<Int, Int> table_;
  std::vector<Int> residue_source_{0};
};

/// The index |N \ ran f| - |N \ dom f|.
inline Int h_index(const NearBijection& f) {
  return static_cast<Int>(f.range_complement().size()) - static_cast<Int>(f.domain_complement().size());
}

/// f after g, defined on dom(g) intersected with g^-1(dom f).
inline NearBijection compose(const NearBijection& f, const NearBijection& g) {
  const Int m = lcm_checked(f.modulus(), g.modulus());
  Int min_shift = 0;
  for (Int c : g.shifts()) min_shift = std::min(min_shift, c);
  const Int t = std::max(g.threshold(), f.threshold() - min_shift);
  NearBijectionDraft d;
  d.threshold = t;
  d.modulus = m;
  d.shifts.resize(m);
  for (Int r = 0; r < m; ++r) {
    Int cg = g.shift_of_class(r);
    d.shifts[r] = cg + f.shift_of_class(r + cg);
  }
  for (Int n = 0; n < t; ++n) {
    auto gn = g.apply(n);
    auto fgn = gn ? f.apply(*gn) : std::nullopt;
    if (fgn) d.exceptions.emplace(n, *fgn);
  }
  return NearBijection::validate(d);
}

inline NearBijection invert(const NearBijection& f) {
  const Int m = f.modulus();
  const Int t = f.range_threshold();
  NearBijectionDraft d;
  d.threshold = t;
  d.modulus = m;
  d.shifts.resize(m);
  for (Int s = 0; s < m; ++s) d.shifts[s] = -f.shifts()[f.residue_source(s)];
  std::map<Int, Int> reverse;
  for (const auto& [a, b] : f.table()) reverse.emplace(b, a);
  for (Int k = 0; k < t; ++k) {
    if (auto it = reverse.find(k); it != reverse.end()) {
      d.exceptions.emplace(k, it->second);
      continue;
    }
    Int n = k - f.shifts()[f.residue_source(k)];
    if (n >= f.threshold()) d.exceptions.emplace(k, n);
  }
  return NearBijection::validate(d);
}

/// Outcome of a mod-finite comparison: the finite disagreement set, or an
/// infinite residue class {n >= from : n mod modulus = residue} where the
/// maps disagree.
struct ModFiniteResult {
  bool equal = true;
  std::vector<Int> differences;
  Int witness_from = 0;
  Int witness_modulus = 1;
  Int witness_residue = 0;

  std::string witness_rule() const {
    if (equal) return "";
    if (witness_modulus == 1) return "all n >= " + std::to_string(witness_from);
    return "n >= " + std::to_string(witness_from) + " with n mod " + std::to_string(witness_modulus) + " = " +
           std::to_string(witness_residue);
  }
};

inline ModFiniteResult equal_mod_finite(const NearBijection& f, const NearBijection& g) {
  ModFiniteResult out;
  const Int m = lcm_checked(f.modulus(), g.modulus());
  const Int t = std::max(f.threshold(), g.threshold());
  for (Int r = 0; r < m; ++r) {
    if (f.shift_of_class(r) != g.shift_of_class(r)) {
      out.equal = false;
      out.witness_from = t;
      out.witness_modulus = m;
      out.witness_residue = r;
      // Tighten to the smallest modulus still describing a disagreement class.
      for (Int d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        bool uniform = true;
        for (Int k = r % d; k < m && uniform; k += d) uniform = f.shift_of_class(k) != g.shift_of_class(k);
        if (uniform) {
          out.witness_modulus = d;
          out.witness_residue = r % d;
          break;
        }
      }
      return out;
    }
  }
  for (Int n = 0; n < t; ++n)
    if (f.apply(n) != g.apply(n)) out.differences.push_back(n);
  return out;
}

/// phi o tau =* tau o psi.
inline ModFiniteResult verify_conjugation(const NearBijection& phi, const NearBijection& psi,
                                          const NearBijection& tau) {
  return equal_mod_finite(compose(phi, tau), compose(tau, psi));
}

/// DSL form; points below the threshold outside the domain are listed as `!`.
inline std::string to_dsl(const NearBijection& f) {
  std::ostringstream os;
  os << "nearbij {";
  if (f.threshold() > 0) {
    os << " except {";
    for (Int n = 0; n < f.threshold(); ++n) {
      auto v = f.apply(n);
      os << ' ' << n << " -> ";
      if (v) os << *v;
      else os << '!';
      os << ';';
    }
    os << " }";
  }
  os << " tail from " << f.threshold() << " mod " << f.modulus() << " {";
  for (Int r = 0; r < f.modulus(); ++r) {
    Int c = f.shifts()[r];
    os << (r ? "; " : " ") << r << ": " << (c >= 0 ? "+" : "") << c;
  }
  os << " } }";
  return os.str();
}

}  // namespace trivconj
