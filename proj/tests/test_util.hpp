#pragma once

#include <cstdint>
#include <vector>

// Deterministic RNG so expected values stay stable across platforms and
// standard library versions.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi]
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Random instance inside the two-stage solver's hypothesis: sizes drawn from
// [base, base+spread] and capacity at least max(spread, average size), so the
// spread bound and the bin-count bound both hold by construction.
struct RandomBalancedInstance {
  std::vector<std::int64_t> sizes;
  std::int64_t cap_num;
  std::int64_t cap_den;
};

inline RandomBalancedInstance random_balanced_instance(SplitMix64& rng, int max_n) {
  RandomBalancedInstance out;
  int n = static_cast<int>(rng.range(1, max_n));
  std::int64_t base = rng.range(1, 100);
  std::int64_t spread = rng.range(0, 60);
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    out.sizes.push_back(rng.range(base, base + spread));
    total += out.sizes.back();
  }
  std::int64_t cap_int = base + spread + rng.range(0, 20);
  if (rng.range(0, 4) == 0) {
    // occasionally a non-integer capacity
    out.cap_num = 3 * cap_int + rng.range(0, 5);
    out.cap_den = 3;
  } else {
    out.cap_num = cap_int;
    out.cap_den = 1;
  }
  return out;
}

// Enumerates all non-decreasing tuples of length n over {1..max_val} and
// hands each one to fn (as a multiset of sizes).
template <typename Fn>
inline void for_each_multiset(int n, int max_val, Fn&& fn) {
  std::vector<std::int64_t> cur(n, 1);
  for (;;) {
    fn(cur);
    int pos = n - 1;
    while (pos >= 0 && cur[pos] == max_val) --pos;
    if (pos < 0) return;
    ++cur[pos];
    for (int i = pos + 1; i < n; ++i) cur[i] = cur[pos];
  }
}
