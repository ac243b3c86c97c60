#pragma once

#include <bit>
#include <cassert>
#include <cstdint>

namespace sghom {

// Vertex sets as 64-bit masks. Everything in this library is desk-scale;
// graphs are capped at 64 vertices (switching graphs at 64, so targets at 32).
using Mask = std::uint64_t;

constexpr int kMaxVerts = 64;

inline Mask bit(int v) {
    assert(v >= 0 && v < kMaxVerts);
    return Mask{1} << v;
}

inline bool has(Mask m, int v) { return (m >> v) & 1; }

inline int popcount(Mask m) { return std::popcount(m); }

inline int lowest(Mask m) {
    assert(m != 0);
    return std::countr_zero(m);
}

// Iterates set bits low to high.
template <typename F>
inline void for_each_bit(Mask m, F&& f) {
    while (m) {
        int v = std::countr_zero(m);
        f(v);
        m &= m - 1;
    }
}

inline Mask all_below(int n) {
    assert(n >= 0 && n <= kMaxVerts);
    return n == kMaxVerts ? ~Mask{0} : (Mask{1} << n) - 1;
}

}  // namespace sghom
