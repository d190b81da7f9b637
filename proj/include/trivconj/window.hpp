#pragma once

#include <map>
#include <vector>

#include "trivconj/error.hpp"

namespace trivconj {

/// Restriction of a map to [0, size).
struct WindowMap {
  enum class Kind {
    Mapped,      // image inside the window
    Escapes,     // image at or beyond the window
    Undefined,   // not in the domain
    Incomplete,  // the point's block is cut by the window edge
  };
  struct Entry {
    Kind kind = Kind::Undefined;
    Int image = 0;
    bool operator==(const Entry&) const = default;
  };

  Int size = 0;
  std::vector<Entry> entries;

  bool mapped(Int n) const { return n >= 0 && n < size && entries[n].kind == Kind::Mapped; }

  /// this after other, on points where both steps stay inside the window.
  WindowMap after(const WindowMap& other) const {
    WindowMap out{size, std::vector<Entry>(size)};
    for (Int n = 0; n < size; ++n) {
      const auto& e = other.entries[n];
      if (e.kind == Kind::Mapped && e.image < size) out.entries[n] = entries[e.image];
      else out.entries[n] = e;
    }
    return out;
  }

  struct Census {
    std::map<Int, Int> cycles;  // complete cycles lying inside the window
    Int no_preimage = 0;        // points of the window that nothing in the window maps to
    Int undefined = 0;
    Int escapes = 0;
    Int incomplete = 0;
  };

  Census census() const {
    Census c;
    std::vector<bool> hit(size, false), seen(size, false);
    for (Int n = 0; n < size; ++n) {
      const auto& e = entries[n];
      switch (e.kind) {
        case Kind::Mapped: hit[e.image] = true; break;
        case Kind::Escapes: ++c.escapes; break;
        case Kind::Undefined: ++c.undefined; break;
        case Kind::Incomplete: ++c.incomplete; break;
      }
    }
    for (Int n = 0; n < size; ++n) {
      if (!hit[n]) ++c.no_preimage;
      if (seen[n] || !mapped(n)) continue;
      Int len = 0;
      Int q = n;
      bool closed = false;
      while (mapped(q) && !seen[q]) {
        seen[q] = true;
        ++len;
        q = entries[q].image;
        if (q == n) {
          closed = true;
          break;
        }
      }
      // A walk that runs into an already seen point is not a new cycle.
      if (closed) ++c.cycles[len];
    }
    return c;
  }
};

}  // namespace trivconj
