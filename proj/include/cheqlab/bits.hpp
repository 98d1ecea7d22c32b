#pragma once

#include <bit>
#include <cstdint>
#include <span>

// Flat 64-bit bitset rows. All order queries and set algebra in this project
// run on these; a row is a span of words, point i lives at word i/64, bit i%64.
namespace cheqlab::bits {

inline int word_count(int nbits) { return (nbits + 63) / 64; }

inline bool test(std::span<const uint64_t> w, int i) {
  return (w[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
}

inline void set(std::span<uint64_t> w, int i) {
  w[static_cast<std::size_t>(i) >> 6] |= uint64_t{1} << (i & 63);
}

inline void clear(std::span<uint64_t> w, int i) {
  w[static_cast<std::size_t>(i) >> 6] &= ~(uint64_t{1} << (i & 63));
}

inline int popcount(std::span<const uint64_t> w) {
  int c = 0;
  for (uint64_t x : w) c += std::popcount(x);
  return c;
}

inline bool is_zero(std::span<const uint64_t> w) {
  for (uint64_t x : w)
    if (x) return false;
  return true;
}

inline bool equal(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// a subseteq b
inline bool subset(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

inline bool intersects(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

template <typename F>
inline void for_each(std::span<const uint64_t> w, F&& f) {
  for (std::size_t wi = 0; wi < w.size(); ++wi) {
    uint64_t x = w[wi];
    while (x) {
      f(static_cast<int>(wi * 64 + std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

// Lexicographic order reading the bit-vector by ascending point index:
// at the first index where the sets differ, the set missing the point is
// smaller. The empty set is the minimum, the full set the maximum.
inline bool lex_less(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    uint64_t diff = a[i] ^ b[i];
    if (diff) {
      uint64_t low = diff & (~diff + 1);
      return (b[i] & low) != 0;
    }
  }
  return false;
}

}  // namespace cheqlab::bits
