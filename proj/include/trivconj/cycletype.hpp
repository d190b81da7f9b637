#pragma once

// Cycle-type sequences with values in N u {aleph_0} and the two conjugacy
// tests built on them: exact equality (conjugacy in S_N) and the necessary
// conditions for conjugacy of the induced maps on N*.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trivconj/census.hpp"
#include "trivconj/setspec.hpp"

namespace trivconj {

class CardinalCount {
 public:
  static CardinalCount fin(Int n) { return CardinalCount(false, n); }
  static CardinalCount omega() { return CardinalCount(true, 0); }

  CardinalCount() = default;

  bool is_omega() const { return omega_; }
  Int value() const { return value_; }

  CardinalCount operator+(const CardinalCount& o) const {
    if (omega_ || o.omega_) return omega();
    return fin(value_ + o.value_);
  }

  std::string to_string() const { return omega_ ? "aleph0" : std::to_string(value_); }

  auto operator<=>(const CardinalCount&) const = default;

 private:
  CardinalCount(bool omega, Int v) : omega_(omega), value_(v) {}
  bool omega_ = false;
  Int value_ = 0;
};

struct CountClass {
  SetSpec lengths;
  CardinalCount count;
  bool operator==(const CountClass&) const = default;
};

/// kappa_l for l >= 1 given by disjoint classes (default 0), kappa_0 and the
/// ray counts of a near-bijection.
struct CycleTypeSpec {
  std::vector<CountClass> classes;
  Int kappa0 = 0;
  Int fwd_rays = 0;
  Int bwd_rays = 0;

  CardinalCount kappa(Int length) const {
    for (const auto& c : classes)
      if (c.lengths.contains(length)) return c.count;
    return CardinalCount::fin(0);
  }
  Int h() const { return fwd_rays - bwd_rays; }
  Int end_count() const { return 2 * kappa0 + fwd_rays + bwd_rays; }
  bool is_permutation() const { return fwd_rays == 0 && bwd_rays == 0; }

  /// Union of the length sets carrying `count`.
  SetSpec lengths_with(const CardinalCount& count) const {
    SetSpec out;
    for (const auto& c : classes)
      if (c.count == count) out = set_union(out, c.lengths);
    return out;
  }
  SetSpec support() const {
    SetSpec out;
    for (const auto& c : classes) out = set_union(out, c.lengths);
    return out;
  }

  bool operator==(const CycleTypeSpec&) const = default;
};

inline CycleTypeSpec from_census(const OrbitCensus& c) {
  CycleTypeSpec t;
  if (!c.omega_lengths.is_empty()) t.classes.push_back({c.omega_lengths, CardinalCount::omega()});
  std::map<Int, std::set<Int>> by_count;
  for (const auto& [len, n] : c.finite_cycles) by_count[n].insert(len);
  for (const auto& [n, lens] : by_count) t.classes.push_back({SetSpec::finite(lens), CardinalCount::fin(n)});
  t.kappa0 = c.z_orbits;
  t.fwd_rays = c.fwd_rays;
  t.bwd_rays = c.bwd_rays;
  return t;
}

namespace detail {

inline SetComparison decide(const SetSpec& a, const SetSpec& b) {
  try {
    return compare(a, b);
  } catch (const Unsupported& e) {
    throw Undecidable("cannot compare " + to_dsl(a) + " with " + to_dsl(b) + " (" + e.what() + ")");
  }
}

inline std::vector<CardinalCount> nonzero_counts(const CycleTypeSpec& a, const CycleTypeSpec& b) {
  std::set<CardinalCount> s;
  for (const auto* t : {&a, &b})
    for (const auto& c : t->classes)
      if (c.count != CardinalCount::fin(0) && !c.lengths.is_empty()) s.insert(c.count);
  return {s.begin(), s.end()};
}

}  // namespace detail

/// Conjugacy in S_N: kappa_l equal for every l >= 1 and kappa_0 equal.
inline bool sn_conjugate(const CycleTypeSpec& a, const CycleTypeSpec& b) {
  if (!a.is_permutation() || !b.is_permutation())
    throw RayDataPresent("S_N conjugacy needs total permutations; got ray counts (" + std::to_string(a.fwd_rays) +
                         "," + std::to_string(a.bwd_rays) + ") and (" + std::to_string(b.fwd_rays) + "," +
                         std::to_string(b.bwd_rays) + ")");
  if (a.kappa0 != b.kappa0) return false;
  for (const auto& count : detail::nonzero_counts(a, b))
    if (detail::decide(a.lengths_with(count), b.lengths_with(count)).kind != SetComparison::Kind::Equal)
      return false;
  return true;
}

struct TrivVerdict {
  enum class Kind { NonConjugate, CriterionMet };
  enum class Reason { None, Index, EndCount, OmegaSupport, InfiniteDisagreement };

  Kind kind = Kind::CriterionMet;
  Reason reason = Reason::None;
  std::string detail;
  std::optional<Int> witness;  // a length where the sequences differ, when the reason is set-valued
};

inline const char* to_string(TrivVerdict::Kind k) {
  return k == TrivVerdict::Kind::NonConjugate ? "NonConjugate" : "CriterionMet";
}

inline const char* to_string(TrivVerdict::Reason r) {
  switch (r) {
    case TrivVerdict::Reason::None: return "none";
    case TrivVerdict::Reason::Index: return "h";
    case TrivVerdict::Reason::EndCount: return "endCount";
    case TrivVerdict::Reason::OmegaSupport: return "omegaSupport";
    case TrivVerdict::Reason::InfiniteDisagreement: return "infiniteDisagreement";
  }
  return "?";
}

/// Necessary conditions for the induced maps on N* to be conjugate by a
/// trivial map. CriterionMet only means none of them fails.
inline TrivVerdict triv_criterion(const CycleTypeSpec& a, const CycleTypeSpec& b) {
  using K = TrivVerdict::Kind;
  using R = TrivVerdict::Reason;
  if (a.h() != b.h())
    return {K::NonConjugate, R::Index, "h: " + std::to_string(a.h()) + " ≠ " + std::to_string(b.h()), {}};
  if (a.end_count() != b.end_count()) {
    std::string detail = a.is_permutation() && b.is_permutation()
                             ? "kappa0: " + std::to_string(a.kappa0) + " ≠ " + std::to_string(b.kappa0)
                             : "endCount: " + std::to_string(a.end_count()) + " ≠ " +
                                   std::to_string(b.end_count());
    return {K::NonConjugate, R::EndCount, detail, {}};
  }
  auto omega = CardinalCount::omega();
  auto om = detail::decide(a.lengths_with(omega), b.lengths_with(omega));
  if (om.kind != SetComparison::Kind::Equal) {
    Int w = om.kind == SetComparison::Kind::FiniteSymDiff ? *om.diff.begin() : om.witness;
    return {K::NonConjugate, R::OmegaSupport,
            "lengths with aleph0 cycles differ at " + std::to_string(w) +
                (om.rule.empty() ? std::string() : " (" + om.rule + ")"),
            w};
  }
  for (const auto& count : detail::nonzero_counts(a, b)) {
    if (count.is_omega()) continue;
    auto cmp = detail::decide(a.lengths_with(count), b.lengths_with(count));
    if (cmp.kind == SetComparison::Kind::InfiniteSymDiff)
      return {K::NonConjugate, R::InfiniteDisagreement,
              "kappa differs for infinitely many lengths: count " + count.to_string() + ", " + cmp.rule,
              cmp.witness};
  }
  auto sup = detail::decide(a.support(), b.support());
  if (sup.kind == SetComparison::Kind::InfiniteSymDiff)
    return {K::NonConjugate, R::InfiniteDisagreement,
            "kappa differs for infinitely many lengths: " + sup.rule, sup.witness};
  return {K::CriterionMet, R::None, "no necessary condition fails", {}};
}

}  // namespace trivconj
