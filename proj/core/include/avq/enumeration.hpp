#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "avq/error.hpp"

namespace avq {

/// k^n with an overflow guard (spaces here are always small).
inline long long pow_ll(int k, int n) {
  long long r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (1LL << 40)) throw_cap("enumeration space too large");
    r *= k;
  }
  return r;
}

/// Sequences over {0,...,k-1} of length n in lexicographic order, first
/// letter most significant. Index 0 is (0,...,0).
inline std::vector<int> nth_sequence(long long idx, int k, int n) {
  std::vector<int> seq(static_cast<size_t>(n), 0);
  for (int pos = n - 1; pos >= 0; --pos) {
    seq[static_cast<size_t>(pos)] = static_cast<int>(idx % k);
    idx /= k;
  }
  return seq;
}

inline long long sequence_index(const std::vector<int>& seq, int k) {
  long long idx = 0;
  for (int s : seq) idx = idx * k + s;
  return idx;
}

/// All ways to split `total` into k nonnegative parts, in lexicographic
/// ascending order of the count tuples. Dividing by `total` yields the
/// simplex grid used by the optimizers; ties in a search break toward the
/// earliest tuple in this order.
inline std::vector<std::vector<int>> compositions(int total, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(k), 0);
  // Recursion-free odometer over the first k-1 coordinates.
  auto emit = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == k - 1) {
      cur[static_cast<size_t>(pos)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      cur[static_cast<size_t>(pos)] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  emit(emit, 0, total);
  return out;
}

// Deterministic sampling helpers. std::mt19937_64 with explicit 53-bit
// doubles and rejection sampling; std::uniform_int_distribution is avoided
// because its stream is not pinned by the standard.

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(std::mt19937_64& rng, int k) {
  const uint64_t bound = ~uint64_t{0} - ~uint64_t{0} % static_cast<uint64_t>(k);
  uint64_t v;
  do {
    v = rng();
  } while (v >= bound);
  return static_cast<int>(v % static_cast<uint64_t>(k));
}

/// Inverse-CDF sample from a probability vector.
inline int sample_index(std::mt19937_64& rng, const std::vector<double>& probs) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace avq
