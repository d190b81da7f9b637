#pragma once

// Orbit structure of a near-bijection. Tail residue cycles with zero net
// displacement contribute infinitely many cycles of one length; the others
// contribute threads that run off to infinity. Everything else meets a
// bounded window and is traced point by point.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "trivconj/nearbij.hpp"
#include "trivconj/setspec.hpp"

namespace trivconj {

struct OrbitCensus {
  /// Cycle lengths with finitely many cycles, excluding omega lengths.
  std::map<Int, Int> finite_cycles;
  /// Lengths with infinitely many cycles.
  SetSpec omega_lengths;
  Int z_orbits = 0;
  Int fwd_rays = 0;
  Int bwd_rays = 0;
  /// Orbits with both a first and a last point. They carry no ends.
  Int finite_paths = 0;

  std::vector<Int> fwd_ray_starts;   // sorted
  std::vector<Int> bwd_ray_ends;     // sorted
  std::vector<Int> z_orbit_anchors;  // least point of each Z-orbit, sorted

  Int end_count() const { return 2 * z_orbits + fwd_rays + bwd_rays; }
  Int h() const { return fwd_rays - bwd_rays; }

  bool operator==(const OrbitCensus&) const = default;
};

namespace detail {

/// Per-residue data of a tail: the residue cycle containing r and its net
/// displacement.
struct TailCycles {
  std::vector<Int> displacement;  // indexed by residue
  std::vector<Int> cycle_length;  // indexed by residue

  explicit TailCycles(const NearBijection& f) {
    const Int m = f.modulus();
    displacement.assign(m, 0);
    cycle_length.assign(m, 0);
    std::vector<bool> done(m, false);
    for (Int r = 0; r < m; ++r) {
      if (done[r]) continue;
      std::vector<Int> members;
      Int d = 0;
      for (Int s = r; !done[s]; s = floor_mod(s + f.shifts()[s], m)) {
        done[s] = true;
        members.push_back(s);
        d += f.shifts()[s];
      }
      for (Int s : members) {
        displacement[s] = d;
        cycle_length[s] = static_cast<Int>(members.size());
      }
    }
  }

  Int displacement_at(Int n) const { return displacement[floor_mod(n, static_cast<Int>(displacement.size()))]; }
};

/// Bounds for tracing f together with its inverse.
struct TraceFrame {
  NearBijection forward;
  NearBijection backward;
  TailCycles forward_cycles;
  TailCycles backward_cycles;
  Int window;         // every orbit except deep zero-displacement cycles meets [0, window)
  Int forward_exit;   // forward escape once at or above this in a rising class
  Int backward_exit;  // same for the inverse

  explicit TraceFrame(const NearBijection& f)
      : forward(f),
        backward(invert(f)),
        forward_cycles(f),
        backward_cycles(backward) {
    Int a = std::max(forward.excursion(), backward.excursion());
    window = std::max(forward.threshold(), backward.threshold()) + a + 1;
    forward_exit = window + forward.excursion() + 1;
    backward_exit = window + backward.excursion() + 1;
  }

  bool forward_escapes(Int q) const { return q >= forward_exit && forward_cycles.displacement_at(q) > 0; }
  bool backward_escapes(Int q) const { return q >= backward_exit && backward_cycles.displacement_at(q) > 0; }
};

enum class EndKind { Closed, Escapes, Stops };

struct TracedOrbit {
  std::vector<Int> points;
  EndKind forward = EndKind::Stops;
  EndKind backward = EndKind::Stops;
  Int first = 0;  // meaningful when backward == Stops
  Int last = 0;   // meaningful when forward == Stops
  Int least = 0;
};

inline TracedOrbit trace_orbit(const TraceFrame& frame, Int p) {
  constexpr std::size_t kMaxTrace = std::size_t{1} << 26;
  TracedOrbit o;
  o.points.push_back(p);
  o.least = p;
  Int q = p;
  for (;;) {
    auto next = frame.forward.apply(q);
    if (!next) {
      o.forward = EndKind::Stops;
      o.last = q;
      break;
    }
    if (*next == p) {
      o.forward = o.backward = EndKind::Closed;
      return o;
    }
    q = *next;
    o.points.push_back(q);
    o.least = std::min(o.least, q);
    if (frame.forward_escapes(q)) {
      o.forward = EndKind::Escapes;
      break;
    }
    if (o.points.size() > kMaxTrace) throw std::logic_error("orbit trace did not terminate");
  }
  q = p;
  for (;;) {
    auto prev = frame.backward.apply(q);
    if (!prev) {
      o.backward = EndKind::Stops;
      o.first = q;
      break;
    }
    q = *prev;
    o.points.push_back(q);
    o.least = std::min(o.least, q);
    if (frame.backward_escapes(q)) {
      o.backward = EndKind::Escapes;
      break;
    }
    if (o.points.size() > kMaxTrace) throw std::logic_error("orbit trace did not terminate");
  }
  return o;
}

}  // namespace detail

inline OrbitCensus orbit_census(const NearBijection& f) {
  using detail::EndKind;
  OrbitCensus c;
  detail::TraceFrame frame(f);

  std::set<Int> omega;
  for (Int r = 0; r < f.modulus(); ++r)
    if (frame.forward_cycles.displacement[r] == 0) omega.insert(frame.forward_cycles.cycle_length[r]);

  std::unordered_set<Int> visited;
  std::map<Int, Int> cycles;
  for (Int p = 0; p < frame.window; ++p) {
    if (visited.count(p)) continue;
    auto o = detail::trace_orbit(frame, p);
    visited.insert(o.points.begin(), o.points.end());
    if (o.forward == EndKind::Closed) {
      ++cycles[static_cast<Int>(o.points.size())];
    } else if (o.forward == EndKind::Escapes && o.backward == EndKind::Escapes) {
      ++c.z_orbits;
      c.z_orbit_anchors.push_back(o.least);
    } else if (o.forward == EndKind::Escapes) {
      ++c.fwd_rays;
      c.fwd_ray_starts.push_back(o.first);
    } else if (o.backward == EndKind::Escapes) {
      ++c.bwd_rays;
      c.bwd_ray_ends.push_back(o.last);
    } else {
      ++c.finite_paths;
    }
  }
  for (const auto& [len, n] : cycles)
    if (!omega.count(len)) c.finite_cycles.emplace(len, n);
  c.omega_lengths = SetSpec::finite(omega);
  std::sort(c.fwd_ray_starts.begin(), c.fwd_ray_starts.end());
  std::sort(c.bwd_ray_ends.begin(), c.bwd_ray_ends.end());
  std::sort(c.z_orbit_anchors.begin(), c.z_orbit_anchors.end());
  return c;
}

/// Joins the largest backward-ray end to the smallest forward-ray start.
inline NearBijection splice(const NearBijection& f) {
  auto c = orbit_census(f);
  if (c.fwd_rays == 0 || c.bwd_rays == 0)
    throw NoRayPair("map has " + std::to_string(c.fwd_rays) + " forward and " + std::to_string(c.bwd_rays) +
                    " backward rays");
  Int end = c.bwd_ray_ends.back();
  Int start = c.fwd_ray_starts.front();
  NearBijectionDraft d;
  d.threshold = f.threshold();
  d.modulus = f.modulus();
  d.shifts = f.shifts();
  for (const auto& [a, b] : f.table()) d.exceptions.emplace(a, b);
  d.exceptions[end] = start;
  return NearBijection::validate(d);
}

}  // namespace trivconj
