#pragma once

// The shift n -> n + 1 acting on eventually periodic subsets of Z (and N):
// images, invariance up to finite sets, an exhaustive minimality sweep, and
// the two ends of every Z-orbit of a near-bijection.

#include <algorithm>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "trivconj/census.hpp"
#include "trivconj/setspec.hpp"

namespace trivconj {

/// {a + 1 : a in A}.
inline SetSpec shift_image(const SetSpec& a) {
  std::vector<Atom> atoms;
  for (const auto& atom : a.atoms()) {
    const auto* p = std::get_if<PeriodicAtom>(&atom);
    if (!p) throw Unsupported("the shift of a geometric atom is not representable");
    PeriodicAtom q = *p;
    q.bound += 1;
    for (Int& r : q.residues) r = (r + 1) % q.modulus;
    std::sort(q.residues.begin(), q.residues.end());
    atoms.push_back(std::move(q));
  }
  std::set<Int> inc, exc;
  for (Int v : a.include()) inc.insert(v + 1);
  for (Int v : a.exclude()) exc.insert(v + 1);
  return SetSpec(a.universe(), std::move(atoms), std::move(inc), std::move(exc));
}

struct InvarianceResult {
  bool invariant = false;
  std::set<Int> overflow;  // invariant case: shift_image(A) \ A
  std::string rule;        // otherwise: an infinite part of shift_image(A) \ A
  Int witness = 0;
};

/// sigma[A] is contained in A up to a finite set.
inline InvarianceResult almost_invariant(const SetSpec& a) {
  auto rc = relative_complement(shift_image(a), a);
  InvarianceResult out;
  out.invariant = !rc.infinite;
  if (out.invariant) out.overflow = std::move(rc.points);
  else {
    out.rule = rc.rule;
    out.witness = rc.witness;
  }
  return out;
}

/// sigma[A] equals A up to a finite set.
inline bool almost_fixed(const SetSpec& a) { return almost_equal(shift_image(a), a); }

enum class Half { Left, Right };

inline const char* to_string(Half h) { return h == Half::Left ? "L" : "R"; }

/// L = {n < 0} or R = {n >= 0} inside Z.
inline SetSpec half_line(Half h) {
  return h == Half::Left ? SetSpec::periodic_to(-1, 1, {0}) : SetSpec::periodic_from(0, 1, {0}, Universe::Int);
}

struct SweepReport {
  Half half = Half::Right;
  Int max_period = 0;
  Int max_threshold = 0;
  Int examined = 0;
  std::vector<SetSpec> one_sided;  // infinite, sigma[A] c* A, half \ A infinite
  std::vector<SetSpec> two_sided;  // infinite, sigma[A] =* A, half \ A infinite
};

namespace detail {

inline bool primitive_pattern(Int mask, Int m) {
  for (Int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    bool periodic = true;
    for (Int r = 0; r < m && periodic; ++r) periodic = ((mask >> r) & 1) == ((mask >> ((r + d) % m)) & 1);
    if (periodic) return false;
  }
  return true;
}

struct SweepChunk {
  Int examined = 0;
  std::vector<SetSpec> one_sided, two_sided;
};

}  // namespace detail

/// Every eventually periodic A inside a half with period <= max_period and
/// threshold <= max_threshold, each set visited once: a residue pattern of
/// exact period m beyond the threshold and an arbitrary head below it.
/// Returns the sets that are infinite, almost invariant and co-infinite in
/// the half.
inline SweepReport minimality_sweep(Int max_period, Int max_threshold, Half half = Half::Right) {
  if (max_period < 1) throw InvalidArgument("max period must be >= 1");
  if (max_threshold < 0 || max_threshold > 20) throw InvalidArgument("max threshold must be in [0, 20]");
  if (max_period > 16) throw InvalidArgument("max period must be <= 16");
  SweepReport report{half, max_period, max_threshold, 0, {}, {}};

  struct Pattern {
    Int modulus;
    std::vector<Int> residues;
  };
  std::vector<Pattern> patterns;
  for (Int m = 1; m <= max_period; ++m)
    for (Int mask = 0; mask < (Int{1} << m); ++mask) {
      if (!detail::primitive_pattern(mask, m)) continue;
      std::vector<Int> res;
      for (Int r = 0; r < m; ++r)
        if ((mask >> r) & 1) res.push_back(r);
      patterns.push_back({m, std::move(res)});
    }

  const SetSpec whole = half_line(half);
  const Int heads = Int{1} << max_threshold;
  auto run = [&](std::size_t begin, std::size_t end, detail::SweepChunk& out) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& pat = patterns[i];
      for (Int head = 0; head < heads; ++head) {
        ++out.examined;
        if (pat.residues.empty()) continue;
        std::set<Int> points;
        for (Int k = 0; k < max_threshold; ++k)
          if ((head >> k) & 1) points.insert(half == Half::Right ? k : -1 - k);
        PeriodicAtom atom = half == Half::Right
                                ? PeriodicAtom{PeriodicAtom::Direction::Up, max_threshold, pat.modulus, pat.residues}
                                : PeriodicAtom{PeriodicAtom::Direction::Down, -1 - max_threshold, pat.modulus,
                                               pat.residues};
        SetSpec a(Universe::Int, {atom}, std::move(points));
        if (!relative_complement(whole, a, false).infinite) continue;
        auto image = shift_image(a);
        if (!relative_complement(image, a, false).infinite) {
          out.one_sided.push_back(a);
          if (!relative_complement(a, image, false).infinite) out.two_sided.push_back(a);
        }
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  std::vector<detail::SweepChunk> chunks(workers);
  std::vector<std::thread> threads;
  const std::size_t per = (patterns.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t b = std::min(patterns.size(), w * per), e = std::min(patterns.size(), (w + 1) * per);
    if (workers == 1) run(b, e, chunks[w]);
    else threads.emplace_back(run, b, e, std::ref(chunks[w]));
  }
  for (auto& t : threads) t.join();

  auto by_text = [](const SetSpec& x, const SetSpec& y) { return to_dsl(x) < to_dsl(y); };
  for (auto& c : chunks) {
    report.examined += c.examined;
    report.one_sided.insert(report.one_sided.end(), c.one_sided.begin(), c.one_sided.end());
    report.two_sided.insert(report.two_sided.end(), c.two_sided.begin(), c.two_sided.end());
  }
  std::sort(report.one_sided.begin(), report.one_sided.end(), by_text);
  std::sort(report.two_sided.begin(), report.two_sided.end(), by_text);
  return report;
}

// ---------------------------------------------------------------------------
// Z-orbits of near-bijections

/// The two ends of one Z-orbit, as subsets of N: the points before the
/// orbit's least point and the points from it onward.
struct OrbitHalves {
  Int anchor = 0;
  SetSpec backward;
  SetSpec forward;
};

/// The shift n -> n + 1 on Z.
struct IntegerShift {};

namespace detail {

// Points reached from `start` by repeatedly applying `step` (start
// included), where `cycles` and `exit` describe the tail of `step`.
inline SetSpec thread_set(const NearBijection& step, const TailCycles& cycles, Int exit, Int start) {
  std::set<Int> points;
  Int q = start;
  points.insert(q);
  while (!(q >= exit && cycles.displacement_at(q) > 0)) {
    auto next = step.apply(q);
    if (!next) throw std::logic_error("Z-orbit end stops");
    q = *next;
    points.insert(q);
  }
  const Int d = cycles.displacement_at(q);
  const Int len = cycles.cycle_length[floor_mod(q, step.modulus())];
  const Int exc = step.excursion();
  const Int bound = q + exc + 1;
  std::vector<Int> residues;
  Int p = q;
  for (Int j = 0; j < len; ++j) {
    residues.push_back(floor_mod(p, d));
    p = *step.apply(p);
  }
  for (p = q; p < bound + exc; p = *step.apply(p))
    if (p < bound) points.insert(p);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  return SetSpec(Universe::Nat, {PeriodicAtom{PeriodicAtom::Direction::Up, bound, d, residues}}, std::move(points));
}

}  // namespace detail

inline std::vector<OrbitHalves> split_census(const NearBijection& f) {
  auto census = orbit_census(f);
  if (census.z_orbits == 0) throw NoZOrbit("map has no Z-orbit");
  detail::TraceFrame frame(f);
  std::vector<OrbitHalves> out;
  for (Int a : census.z_orbit_anchors) {
    OrbitHalves h;
    h.anchor = a;
    h.forward = detail::thread_set(frame.forward, frame.forward_cycles, frame.forward_exit, a);
    h.backward = detail::thread_set(frame.backward, frame.backward_cycles, frame.backward_exit,
                                    *frame.backward.apply(a));
    out.push_back(std::move(h));
  }
  return out;
}

inline std::vector<OrbitHalves> split_census(IntegerShift) {
  return {OrbitHalves{0, half_line(Half::Left), half_line(Half::Right)}};
}

}  // namespace trivconj
