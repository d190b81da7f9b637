#pragma once

// N cut into consecutive blocks whose sizes come from a set (in increasing
// order) or from an eventually periodic sequence; every block is one cycle
// (a_1 a_2 ... a_l) with a_i listed in increasing order.

#include <numeric>
#include <sstream>
#include <variant>
#include <vector>

#include "trivconj/cycletype.hpp"
#include "trivconj/setspec.hpp"
#include "trivconj/window.hpp"

namespace trivconj {

class BlockPermutation {
 public:
  struct FromSet {
    SetSpec sizes;
    bool operator==(const FromSet&) const = default;
  };
  struct FromSeq {
    std::vector<Int> prefix;
    std::vector<Int> period;
    bool operator==(const FromSeq&) const = default;
  };
  using Source = std::variant<FromSet, FromSeq>;

  struct Block {
    Int start;
    Int size;
    Int index;
  };

  static BlockPermutation from_set(SetSpec sizes) {
    if (sizes.universe() != Universe::Nat) throw InvalidArgument("block sizes must be a subset of N");
    if (!sizes.is_infinite()) throw InvalidArgument("block sizes must form an infinite set");
    if (sizes.contains(0)) throw InvalidArgument("block sizes must be >= 1");
    return BlockPermutation(FromSet{std::move(sizes)});
  }

  static BlockPermutation from_sequence(std::vector<Int> prefix, std::vector<Int> period) {
    if (period.empty()) throw InvalidArgument("size sequence needs a non-empty repeating part");
    for (const auto* v : {&prefix, &period})
      for (Int s : *v)
        if (s < 1) throw InvalidArgument("block sizes must be >= 1");
    return BlockPermutation(FromSeq{std::move(prefix), std::move(period)});
  }

  const Source& source() const { return source_; }

  Block block_containing(Int n) const {
    if (n < 0) throw InvalidArgument("point outside N");
    if (const auto* s = std::get_if<FromSet>(&source_)) {
      Int start = 0, index = 0;
      for (Int size = *s->sizes.next_member(1);; size = *s->sizes.next_member(size + 1), ++index) {
        if (n < start + size) return {start, size, index};
        start += size;
      }
    }
    const auto& q = std::get<FromSeq>(source_);
    Int start = 0, index = 0;
    for (Int size : q.prefix) {
      if (n < start + size) return {start, size, index};
      start += size;
      ++index;
    }
    const Int span = std::accumulate(q.period.begin(), q.period.end(), Int{0});
    const Int skip = (n - start) / span;
    start += skip * span;
    index += skip * static_cast<Int>(q.period.size());
    for (Int size : q.period) {
      if (n < start + size) return {start, size, index};
      start += size;
      ++index;
    }
    throw std::logic_error("block search overran one period");
  }

  Int apply(Int n) const {
    auto b = block_containing(n);
    return n + 1 == b.start + b.size ? b.start : n + 1;
  }

  bool operator==(const BlockPermutation&) const = default;

 private:
  explicit BlockPermutation(Source s) : source_(std::move(s)) {}
  Source source_;
};

inline CycleTypeSpec cycle_type_of(const BlockPermutation& p) {
  CycleTypeSpec t;
  if (const auto* s = std::get_if<BlockPermutation::FromSet>(&p.source())) {
    t.classes.push_back({s->sizes, CardinalCount::fin(1)});
    return t;
  }
  const auto& q = std::get<BlockPermutation::FromSeq>(p.source());
  std::set<Int> repeating(q.period.begin(), q.period.end());
  std::map<Int, Int> counts;
  for (Int s : q.prefix)
    if (!repeating.count(s)) ++counts[s];
  t.classes.push_back({SetSpec::finite(repeating), CardinalCount::omega()});
  std::map<Int, std::set<Int>> by_count;
  for (const auto& [len, n] : counts) by_count[n].insert(len);
  for (const auto& [n, lens] : by_count) t.classes.push_back({SetSpec::finite(lens), CardinalCount::fin(n)});
  return t;
}

/// Restriction to [0, W); points of the block cut by W are Incomplete.
inline WindowMap window_of(const BlockPermutation& p, Int w) {
  if (w < 1) throw InvalidArgument("window size must be >= 1");
  WindowMap out{w, std::vector<WindowMap::Entry>(w)};
  Int n = 0;
  while (n < w) {
    auto b = p.block_containing(n);
    bool complete = b.start + b.size <= w;
    for (Int k = b.start; k < b.start + b.size && k < w; ++k) {
      if (complete) out.entries[k] = {WindowMap::Kind::Mapped, p.apply(k)};
      else out.entries[k] = {WindowMap::Kind::Incomplete, 0};
    }
    n = b.start + b.size;
  }
  return out;
}

inline std::string to_dsl(const BlockPermutation& p) {
  std::ostringstream os;
  os << "blockperm sizes ";
  if (const auto* s = std::get_if<BlockPermutation::FromSet>(&p.source())) {
    os << "from " << to_dsl(s->sizes);
    return os.str();
  }
  const auto& q = std::get<BlockPermutation::FromSeq>(p.source());
  os << "seq {";
  for (std::size_t i = 0; i < q.prefix.size(); ++i) os << (i ? ", " : " ") << q.prefix[i];
  os << (q.prefix.empty() ? " repeat" : " | repeat");
  for (std::size_t i = 0; i < q.period.size(); ++i) os << (i ? ", " : " ") << q.period[i];
  os << " }";
  return os.str();
}

}  // namespace trivconj
