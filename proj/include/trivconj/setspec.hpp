#pragma once

// Finitely represented subsets of N (or Z): unions of eventually periodic
// atoms and geometric progressions, corrected by finite include/exclude
// lists. Comparison classifies the symmetric difference as empty, finite or
// infinite.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "trivconj/arith.hpp"
#include "trivconj/error.hpp"

namespace trivconj {

enum class Universe { Nat, Int };

/// {n >= bound : n mod modulus in residues} (Up) or the mirrored
/// {n <= bound : ...} (Down, integer universe only).
struct PeriodicAtom {
  enum class Direction { Up, Down };

  Direction direction = Direction::Up;
  Int bound = 0;
  Int modulus = 1;
  std::vector<Int> residues;  // sorted, distinct, each in [0, modulus)

  bool in_range(Int n) const { return direction == Direction::Up ? n >= bound : n <= bound; }
  bool has_residue(Int r) const { return std::binary_search(residues.begin(), residues.end(), r); }
  bool contains(Int n) const { return in_range(n) && has_residue(floor_mod(n, modulus)); }

  auto operator<=>(const PeriodicAtom&) const = default;
  bool operator==(const PeriodicAtom&) const = default;
};

/// {coefficient * ratio^k : k >= 0}.
struct GeometricAtom {
  Int coefficient = 1;
  Int ratio = 2;

  bool contains(Int n) const {
    if (n < coefficient || n % coefficient != 0) return false;
    Int q = n / coefficient;
    while (q % ratio == 0) q /= ratio;
    return q == 1;
  }

  auto operator<=>(const GeometricAtom&) const = default;
  bool operator==(const GeometricAtom&) const = default;
};

using Atom = std::variant<PeriodicAtom, GeometricAtom>;

inline bool atom_contains(const Atom& a, Int n) {
  return std::visit([n](const auto& v) { return v.contains(n); }, a);
}

class SetSpec {
 public:
  SetSpec() = default;

  SetSpec(Universe universe, std::vector<Atom> atoms, std::set<Int> include = {},
          std::set<Int> exclude = {})
      : universe_(universe),
        atoms_(std::move(atoms)),
        include_(std::move(include)),
        exclude_(std::move(exclude)) {
    validate();
    canonicalize();
  }

  static SetSpec finite(std::set<Int> points, Universe u = Universe::Nat) {
    return SetSpec(u, {}, std::move(points));
  }
  static SetSpec periodic_from(Int bound, Int modulus, std::vector<Int> residues,
                               Universe u = Universe::Nat) {
    return SetSpec(u, {PeriodicAtom{PeriodicAtom::Direction::Up, bound, modulus, std::move(residues)}});
  }
  static SetSpec periodic_to(Int bound, Int modulus, std::vector<Int> residues) {
    return SetSpec(Universe::Int,
                   {PeriodicAtom{PeriodicAtom::Direction::Down, bound, modulus, std::move(residues)}});
  }
  static SetSpec geometric(Int coefficient, Int ratio, Universe u = Universe::Nat) {
    return SetSpec(u, {GeometricAtom{coefficient, ratio}});
  }

  Universe universe() const { return universe_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::set<Int>& include() const { return include_; }
  const std::set<Int>& exclude() const { return exclude_; }

  bool contains(Int n) const {
    if (universe_ == Universe::Nat && n < 0) return false;
    if (include_.count(n)) return true;
    if (exclude_.count(n)) return false;
    return atoms_cover(n);
  }

  bool atoms_cover(Int n) const {
    for (const auto& a : atoms_)
      if (atom_contains(a, n)) return true;
    return false;
  }

  /// Canonical atoms are never empty, so any atom makes the set infinite.
  bool is_infinite() const { return !atoms_.empty(); }
  bool is_empty() const { return atoms_.empty() && include_.empty(); }

  /// Smallest member >= from, if any.
  std::optional<Int> next_member(Int from) const {
    if (universe_ == Universe::Nat && from < 0) from = 0;
    for (;;) {
      std::optional<Int> best;
      auto take = [&](Int v) {
        if (!best || v < *best) best = v;
      };
      if (auto it = include_.lower_bound(from); it != include_.end()) take(*it);
      for (const auto& a : atoms_) {
        if (const auto* p = std::get_if<PeriodicAtom>(&a)) {
          bool up = p->direction == PeriodicAtom::Direction::Up;
          Int start = up ? std::max(from, p->bound) : from;
          if (!up && start > p->bound) continue;
          Int r0 = floor_mod(start, p->modulus);
          for (Int r : p->residues) {
            Int n = start + floor_mod(r - r0, p->modulus);
            if (up || n <= p->bound) take(n);
          }
        } else {
          const auto& g = std::get<GeometricAtom>(a);
          std::optional<Int> v = g.coefficient;
          while (v && *v < from) v = checked_mul(*v, g.ratio);
          if (v) take(*v);
        }
      }
      if (!best) return std::nullopt;
      if (contains(*best)) return best;
      from = *best + 1;
    }
  }

  bool operator==(const SetSpec&) const = default;

 private:
  void validate() const {
    for (Int v : include_)
      if (exclude_.count(v))
        throw InvalidArgument("point " + std::to_string(v) + " is both included and excluded");
    if (universe_ == Universe::Nat) {
      auto neg = [](const std::set<Int>& s) { return !s.empty() && *s.begin() < 0; };
      if (neg(include_) || neg(exclude_)) throw InvalidArgument("negative point in a subset of N");
    }
    for (const auto& a : atoms_) {
      if (const auto* p = std::get_if<PeriodicAtom>(&a)) {
        if (p->modulus < 1) throw InvalidArgument("periodic modulus must be >= 1");
        for (Int r : p->residues)
          if (r < 0 || r >= p->modulus)
            throw InvalidArgument("residue " + std::to_string(r) + " outside [0, " +
                                  std::to_string(p->modulus) + ")");
        if (universe_ == Universe::Nat) {
          if (p->direction == PeriodicAtom::Direction::Down)
            throw InvalidArgument("downward periodic atom in a subset of N");
          if (p->bound < 0) throw InvalidArgument("negative periodic bound in a subset of N");
        }
      } else {
        const auto& g = std::get<GeometricAtom>(a);
        if (g.coefficient < 1 || g.ratio < 2)
          throw InvalidArgument("geometric atom needs coefficient >= 1 and ratio >= 2");
      }
    }
  }

  static void reduce_modulus(PeriodicAtom& p) {
    std::sort(p.residues.begin(), p.residues.end());
    p.residues.erase(std::unique(p.residues.begin(), p.residues.end()), p.residues.end());
    for (Int d = 1; d < p.modulus; ++d) {
      if (p.modulus % d != 0) continue;
      bool periodic = true;
      for (Int r = 0; r < p.modulus && periodic; ++r)
        periodic = p.has_residue(r) == p.has_residue((r + d) % p.modulus);
      if (periodic) {
        std::vector<Int> reduced;
        for (Int r : p.residues)
          if (r < d) reduced.push_back(r);
        p.modulus = d;
        p.residues = std::move(reduced);
        return;
      }
    }
  }

  // Moves the bound of atom i outward across residue points listed in the
  // include set. For N an upward atom may reach 0.
  bool extend_bound(std::size_t i) {
    auto& p = std::get<PeriodicAtom>(atoms_[i]);
    const Int step = p.direction == PeriodicAtom::Direction::Up ? -1 : 1;
    constexpr Int kMaxSteps = 1 << 20;
    Int best = p.bound;
    bool reached_zero = false;
    for (Int k = 1; k <= kMaxSteps; ++k) {
      Int n = p.bound + step * k;
      if (universe_ == Universe::Nat && n < 0) {
        reached_zero = true;
        break;
      }
      if (!p.has_residue(floor_mod(n, p.modulus))) continue;
      if (!include_.count(n)) break;
      best = n;
    }
    if (reached_zero) best = 0;
    if (best == p.bound) return false;
    p.bound = best;
    return true;
  }

  void canonicalize() {
    for (int round = 0; round < 64; ++round) {
      bool changed = false;
      std::vector<Atom> next;
      for (auto& a : atoms_) {
        if (auto* p = std::get_if<PeriodicAtom>(&a)) {
          auto before = *p;
          reduce_modulus(*p);
          if (p->residues.empty()) {
            changed = true;
            continue;
          }
          changed |= !(before == *p);
        }
        next.push_back(a);
      }
      // Merge periodic atoms sharing direction and bound.
      std::map<std::pair<int, Int>, PeriodicAtom> merged;
      std::vector<Atom> rest;
      for (auto& a : next) {
        if (auto* p = std::get_if<PeriodicAtom>(&a)) {
          auto key = std::make_pair(static_cast<int>(p->direction), p->bound);
          auto it = merged.find(key);
          if (it == merged.end()) {
            merged.emplace(key, *p);
          } else {
            changed = true;
            auto& q = it->second;
            Int m = lcm_checked(q.modulus, p->modulus);
            std::vector<Int> res;
            for (Int r = 0; r < m; ++r)
              if (q.has_residue(r % q.modulus) || p->has_residue(r % p->modulus)) res.push_back(r);
            q.modulus = m;
            q.residues = std::move(res);
            reduce_modulus(q);
          }
        } else {
          rest.push_back(a);
        }
      }
      atoms_.clear();
      for (auto& [k, p] : merged) atoms_.push_back(p);
      for (auto& a : rest) atoms_.push_back(a);
      std::sort(atoms_.begin(), atoms_.end());
      atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());

      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (std::holds_alternative<PeriodicAtom>(atoms_[i])) changed |= extend_bound(i);

      std::set<Int> inc;
      for (Int v : include_)
        if (!atoms_cover(v)) inc.insert(v);
      std::set<Int> exc;
      for (Int v : exclude_)
        if (atoms_cover(v)) exc.insert(v);
      changed |= inc != include_ || exc != exclude_;
      include_ = std::move(inc);
      exclude_ = std::move(exc);
      if (!changed) break;
    }
    std::sort(atoms_.begin(), atoms_.end());
  }

  Universe universe_ = Universe::Nat;
  std::vector<Atom> atoms_;
  std::set<Int> include_;
  std::set<Int> exclude_;
};

// ---------------------------------------------------------------------------
// Printing

inline std::string format_int_list(const std::set<Int>& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Int v : s) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

/// DSL form, e.g. `set { periodic from 10 mod 1 {0}; finite {2,5} }`.
inline std::string to_dsl(const SetSpec& s) {
  std::ostringstream os;
  os << "set ";
  if (s.universe() == Universe::Int) os << "int ";
  os << '{';
  std::vector<std::string> items;
  for (const auto& a : s.atoms()) {
    std::ostringstream it;
    if (const auto* p = std::get_if<PeriodicAtom>(&a)) {
      it << "periodic " << (p->direction == PeriodicAtom::Direction::Up ? "from " : "to ") << p->bound
         << " mod " << p->modulus << ' '
         << format_int_list(std::set<Int>(p->residues.begin(), p->residues.end()));
    } else {
      const auto& g = std::get<GeometricAtom>(a);
      it << "geometric " << g.coefficient << " * " << g.ratio << "^k";
    }
    items.push_back(it.str());
  }
  if (!s.include().empty()) items.push_back("finite " + format_int_list(s.include()));
  if (!s.exclude().empty()) items.push_back("except " + format_int_list(s.exclude()));
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? "; " : " ") << items[i];
  os << (items.empty() ? "}" : " }");
  return os.str();
}

// ---------------------------------------------------------------------------
// Decision procedure

/// Classification of x \ y.
struct RelativeComplement {
  bool infinite = false;
  std::set<Int> points;  // exact difference when finite and enumerated
  std::string rule;      // infinite case: description of a subset of the difference
  Int witness = 0;       // infinite case: one explicit element
};

namespace detail {

// Largest absolute value among bounds and finite points of both operands,
// plus one. Beyond it, membership is decided by atoms alone.
inline Int region_bound(const SetSpec& x, const SetSpec& y) {
  Int b = 0;
  for (const SetSpec* s : {&x, &y}) {
    for (Int v : s->include()) b = std::max(b, v < 0 ? -v : v);
    for (Int v : s->exclude()) b = std::max(b, v < 0 ? -v : v);
    for (const auto& a : s->atoms())
      if (const auto* p = std::get_if<PeriodicAtom>(&a)) b = std::max(b, p->bound < 0 ? -p->bound : p->bound);
  }
  return b + 1;
}

inline Int side_modulus(const SetSpec& x, const SetSpec& y, PeriodicAtom::Direction d) {
  Int m = 1;
  for (const SetSpec* s : {&x, &y})
    for (const auto& a : s->atoms())
      if (const auto* p = std::get_if<PeriodicAtom>(&a); p && p->direction == d) m = lcm_checked(m, p->modulus);
  return m;
}

inline bool side_pattern(const SetSpec& s, PeriodicAtom::Direction d, Int residue) {
  for (const auto& a : s.atoms())
    if (const auto* p = std::get_if<PeriodicAtom>(&a); p && p->direction == d)
      if (p->has_residue(floor_mod(residue, p->modulus))) return true;
  return false;
}

/// Elements c0 * g^e, g not a perfect power and g not dividing c0.
struct Ray {
  Int root;
  Int core;
  auto operator<=>(const Ray&) const = default;
};

/// Exponents {start + step * k : k >= 0} of a ray.
struct ExponentProgression {
  Int start;
  Int step;
  bool contains(Int e) const { return e >= start && (e - start) % step == 0; }
};

inline std::pair<Ray, ExponentProgression> ray_of(const GeometricAtom& g) {
  auto [root, power] = minimal_root(g.ratio);
  Int core = g.coefficient;
  Int s = 0;
  while (core % root == 0) {
    core /= root;
    ++s;
  }
  return {Ray{root, core}, ExponentProgression{s, power}};
}

inline std::map<Ray, std::vector<ExponentProgression>> rays_of(const SetSpec& s) {
  std::map<Ray, std::vector<ExponentProgression>> out;
  for (const auto& a : s.atoms())
    if (const auto* g = std::get_if<GeometricAtom>(&a)) {
      auto [ray, prog] = ray_of(*g);
      out[ray].push_back(prog);
    }
  return out;
}

inline Int ray_value(const Ray& r, Int e) {
  auto p = checked_pow(r.root, e);
  auto v = p ? checked_mul(r.core, *p) : std::nullopt;
  if (!v) throw Unsupported("element " + std::to_string(r.core) + "*" + std::to_string(r.root) + "^" +
                            std::to_string(e) + " exceeds 64-bit range");
  return *v;
}

constexpr Int kScanLimit = Int{1} << 22;
constexpr Int kWitnessSteps = 1 << 20;

}  // namespace detail

/// Decides whether x \ y is finite. With `enumerate`, the finite case lists the
/// exact difference.
inline RelativeComplement relative_complement(const SetSpec& x, const SetSpec& y, bool enumerate = true) {
  using detail::Ray;
  using Dir = PeriodicAtom::Direction;
  if (x.universe() != y.universe()) throw InvalidArgument("sets over different universes");
  RelativeComplement out;
  const Int bound = detail::region_bound(x, y);
  const bool integers = x.universe() == Universe::Int;
  const Int m_up = detail::side_modulus(x, y, Dir::Up);

  auto find_witness = [&](Int start, Int step) -> Int {
    Int n = start;
    for (Int k = 0; k < detail::kWitnessSteps; ++k) {
      if (x.contains(n) && !y.contains(n)) return n;
      auto nx = checked_add(n, step);
      if (!nx) break;
      n = *nx;
    }
    throw Unsupported("no explicit witness found in a class reported infinite");
  };

  // Residue classes beyond the bound where x's periodic part holds and y's does not.
  for (Int r = 0; r < m_up; ++r) {
    if (detail::side_pattern(x, Dir::Up, r) && !detail::side_pattern(y, Dir::Up, r)) {
      Int start = bound + floor_mod(r - bound, m_up);
      out.infinite = true;
      out.witness = find_witness(start, m_up);
      out.rule = "n >= " + std::to_string(bound) + " with n mod " + std::to_string(m_up) + " = " + std::to_string(r);
      return out;
    }
  }
  if (integers) {
    const Int m_down = detail::side_modulus(x, y, Dir::Down);
    for (Int r = 0; r < m_down; ++r) {
      if (detail::side_pattern(x, Dir::Down, r) && !detail::side_pattern(y, Dir::Down, r)) {
        Int start = -bound - floor_mod(-bound - r, m_down);
        out.infinite = true;
        out.witness = find_witness(start, -m_down);
        out.rule = "n <= " + std::to_string(-bound) + " with n mod " + std::to_string(m_down) + " = " +
                   std::to_string(r);
        return out;
      }
    }
  }

  // Geometric parts, ray by ray, masked to classes where y's periodic part is absent.
  auto x_rays = detail::rays_of(x);
  auto y_rays = detail::rays_of(y);
  std::set<Int> candidates;
  for (const auto& [ray, x_progs] : x_rays) {
    std::vector<detail::ExponentProgression> y_progs;
    if (auto it = y_rays.find(ray); it != y_rays.end()) y_progs = it->second;

    // Preperiod and period of core * root^e mod m_up.
    std::map<Int, Int> seen;
    std::vector<Int> residues;
    Int v = floor_mod(ray.core, m_up);
    Int pre = 0, period = 1;
    for (Int e = 0;; ++e) {
      if (auto it = seen.find(v); it != seen.end()) {
        pre = it->second;
        period = e - it->second;
        break;
      }
      seen.emplace(v, e);
      residues.push_back(v);
      v = mul_mod(v, floor_mod(ray.root, m_up), m_up);
    }
    auto residue_at = [&](Int e) {
      return e < pre ? residues[e] : residues[pre + (e - pre) % period];
    };

    Int e_bound = 0;
    for (std::optional<Int> val = ray.core; val && *val < bound; val = checked_mul(*val, ray.root)) ++e_bound;

    Int big_period = period;
    Int start = std::max(pre, e_bound);
    for (const auto& p : x_progs) {
      big_period = lcm_checked(big_period, p.step);
      start = std::max(start, p.start);
    }
    for (const auto& p : y_progs) {
      big_period = lcm_checked(big_period, p.step);
      start = std::max(start, p.start);
    }
    auto covered = [](const std::vector<detail::ExponentProgression>& ps, Int e) {
      for (const auto& p : ps)
        if (p.contains(e)) return true;
      return false;
    };
    for (Int e = start; e < start + big_period; ++e) {
      if (covered(x_progs, e) && !covered(y_progs, e) && !detail::side_pattern(y, Dir::Up, residue_at(e))) {
        Int k = e;
        for (;; k += big_period) {
          Int val = detail::ray_value(ray, k);
          if (x.contains(val) && !y.contains(val)) {
            out.infinite = true;
            out.witness = val;
            break;
          }
          if (k - e > detail::kWitnessSteps) throw Unsupported("no explicit witness on geometric ray");
        }
        out.rule = std::to_string(ray.core) + "*" + std::to_string(ray.root) + "^k with k >= " + std::to_string(k);
        if (big_period > 1) out.rule += " and k mod " + std::to_string(big_period) + " = " + std::to_string(e % big_period);
        return out;
      }
    }
    if (enumerate)
      for (Int e = 0; e < start; ++e) {
        auto p = checked_pow(ray.root, e);
        auto val = p ? checked_mul(ray.core, *p) : std::nullopt;
        if (!val) throw Unsupported("geometric element exceeds 64-bit range");
        if (*val >= bound) candidates.insert(*val);
      }
  }

  if (enumerate) {
    if (bound > detail::kScanLimit)
      throw Unsupported("finite region up to " + std::to_string(bound) + " is too large to enumerate");
    for (Int n = integers ? -bound : 0; n <= bound; ++n)
      if (x.contains(n) && !y.contains(n)) out.points.insert(n);
    for (Int n : candidates)
      if (x.contains(n) && !y.contains(n)) out.points.insert(n);
  }
  return out;
}

struct SetComparison {
  enum class Kind { Equal, FiniteSymDiff, InfiniteSymDiff };
  Kind kind = Kind::Equal;
  std::set<Int> diff;   // FiniteSymDiff
  std::string rule;     // InfiniteSymDiff
  Int witness = 0;      // InfiniteSymDiff
};

inline const char* to_string(SetComparison::Kind k) {
  switch (k) {
    case SetComparison::Kind::Equal: return "Equal";
    case SetComparison::Kind::FiniteSymDiff: return "FiniteSymDiff";
    case SetComparison::Kind::InfiniteSymDiff: return "InfiniteSymDiff";
  }
  return "?";
}

/// Classifies the symmetric difference of x and y.
inline SetComparison compare(const SetSpec& x, const SetSpec& y) {
  if (x.universe() != y.universe()) throw InvalidArgument("compare: sets over different universes");
  SetComparison out;
  auto left = relative_complement(x, y);
  if (left.infinite) {
    out.kind = SetComparison::Kind::InfiniteSymDiff;
    out.rule = "in first only: " + left.rule;
    out.witness = left.witness;
    return out;
  }
  auto right = relative_complement(y, x);
  if (right.infinite) {
    out.kind = SetComparison::Kind::InfiniteSymDiff;
    out.rule = "in second only: " + right.rule;
    out.witness = right.witness;
    return out;
  }
  out.diff = std::move(left.points);
  out.diff.insert(right.points.begin(), right.points.end());
  out.kind = out.diff.empty() ? SetComparison::Kind::Equal : SetComparison::Kind::FiniteSymDiff;
  return out;
}

/// True iff x and y differ by at most finitely many points (no enumeration).
inline bool almost_equal(const SetSpec& x, const SetSpec& y) {
  return !relative_complement(x, y, false).infinite && !relative_complement(y, x, false).infinite;
}

inline SetSpec set_union(const SetSpec& x, const SetSpec& y) {
  if (x.universe() != y.universe()) throw InvalidArgument("union of sets over different universes");
  std::vector<Atom> atoms = x.atoms();
  atoms.insert(atoms.end(), y.atoms().begin(), y.atoms().end());
  std::set<Int> pts;
  for (const SetSpec* s : {&x, &y}) {
    pts.insert(s->include().begin(), s->include().end());
    pts.insert(s->exclude().begin(), s->exclude().end());
  }
  std::set<Int> inc, exc;
  for (Int p : pts) (x.contains(p) || y.contains(p) ? inc : exc).insert(p);
  return SetSpec(x.universe(), std::move(atoms), std::move(inc), std::move(exc));
}

/// k pairwise disjoint infinite sets {n >= 2^i : n = 2^(i-1) mod 2^i}, i = 1..k.
inline std::vector<SetSpec> disjoint_family(int k) {
  if (k < 1 || k > 61) throw InvalidArgument("disjoint_family needs 1 <= k <= 61");
  std::vector<SetSpec> out;
  for (int i = 1; i <= k; ++i) {
    Int m = Int{1} << i;
    out.push_back(SetSpec::periodic_from(m, m, {m / 2}));
  }
  return out;
}

}  // namespace trivconj
