#pragma once

// Straightforward reference computations used to cross-check the library.
// Nothing here calls into the code under test.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "cachecode/delivery.hpp"

namespace oracle {

// User u holds packets u, u + 1, ..., u + i - 1 (mod K).
inline bool cached(int k, int i, int user, int packet) {
  return ((packet - user) % k + k) % k < i;
}

inline std::int64_t lambda(int k, int i) {
  const int gamma = k - i + 1;
  const int t = 2 + i / gamma + (i - 1) / gamma;
  const std::int64_t terms = static_cast<std::int64_t>(k) * (k - i);
  return (terms + t - 1) / t;
}

// Every user can strip all other terms of each codeword it appears in.
inline bool decodable(const std::vector<cachecode::Codeword>& codewords, int k, int i) {
  for (const auto& c : codewords) {
    for (const auto& a : c.terms) {
      for (const auto& b : c.terms) {
        if (&a == &b) continue;
        if (!cached(k, i, a.user, b.packet)) return false;
      }
    }
  }
  return true;
}

// Each (user, uncached packet) appears exactly once and nothing else does.
inline bool covers(const std::vector<cachecode::Codeword>& codewords, int k, int i) {
  std::multiset<std::pair<int, int>> sent;
  for (const auto& c : codewords) {
    for (const auto& s : c.terms) sent.insert({s.user, s.packet});
  }
  std::multiset<std::pair<int, int>> wanted;
  for (int u = 1; u <= k; ++u) {
    for (int p = 1; p <= k; ++p) {
      if (!cached(k, i, u, p)) wanted.insert({u, p});
    }
  }
  return sent == wanted;
}

// Closed-form entries of the multi-access comparison table, as fractions
// with denominator K.
inline int minus_two_numerator(int k) { return (k % 3 == 0 && k >= 6) ? 3 : 4; }

inline int minus_three_numerator(int k) {
  if (k == 6) return 9;
  if (k == 5 || k == 10) return 8;
  if (k % 4 == 0) return 6;
  return 7;
}

// The three transmissions for K = 6, i = 4 with identity demands.
inline std::vector<std::vector<std::pair<int, int>>> example_six_four() {
  return {{{1, 5}, {2, 1}, {4, 2}, {5, 4}},
          {{2, 6}, {3, 2}, {5, 3}, {6, 5}},
          {{3, 1}, {4, 3}, {6, 4}, {1, 6}}};
}

}  // namespace oracle
