#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace eds::jet {

// Base directions, in the fixed chart order.
enum Dir : int { DirT = 0, DirX = 1, DirY = 2, DirZ = 3 };

inline const char* dir_letter(int d) {
  static const char* L[4] = {"t", "x", "y", "z"};
  return L[d];
}

// Derivative multi-index over the four base directions, stored as counts.
struct MultiIndex {
  std::array<uint8_t, 4> c{0, 0, 0, 0};

  static MultiIndex empty() { return MultiIndex{}; }
  static MultiIndex of(int d) {
    MultiIndex m;
    m.c[static_cast<std::size_t>(d)] = 1;
    return m;
  }
  static MultiIndex of(int d1, int d2) { return of(d1).plus(d2); }

  int order() const { return c[0] + c[1] + c[2] + c[3]; }

  MultiIndex plus(int d) const {
    MultiIndex m = *this;
    ++m.c[static_cast<std::size_t>(d)];
    return m;
  }

  // Componentwise difference; caller guarantees dominance.
  MultiIndex minus(const MultiIndex& o) const {
    MultiIndex m;
    for (int i = 0; i < 4; ++i)
      m.c[static_cast<std::size_t>(i)] =
          static_cast<uint8_t>(c[static_cast<std::size_t>(i)] - o.c[static_cast<std::size_t>(i)]);
    return m;
  }

  bool dominates(const MultiIndex& o) const {
    for (int i = 0; i < 4; ++i)
      if (c[static_cast<std::size_t>(i)] < o.c[static_cast<std::size_t>(i)]) return false;
    return true;
  }

  // Any direction with a positive count; -1 for the empty index.
  int first_direction() const {
    for (int i = 0; i < 4; ++i)
      if (c[static_cast<std::size_t>(i)] > 0) return i;
    return -1;
  }

  // "tyy" style suffix with letters in chart order; empty for order zero.
  std::string suffix() const {
    std::string s;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < c[static_cast<std::size_t>(i)]; ++k) s += dir_letter(i);
    return s;
  }

  bool operator==(const MultiIndex& o) const { return c == o.c; }
  bool operator!=(const MultiIndex& o) const { return !(*this == o); }
  bool operator<(const MultiIndex& o) const {
    if (order() != o.order()) return order() < o.order();
    return c < o.c;
  }
};

}  // namespace eds::jet
