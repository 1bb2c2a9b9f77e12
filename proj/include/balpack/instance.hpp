#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "balpack/errors.hpp"
#include "balpack/rational.hpp"

namespace balpack {

/// A problem instance: integer object sizes held in non-increasing order,
/// with an index map back to the order they were given in, plus the shared
/// bin capacity and optional structural parameters.
struct Instance {
  std::vector<std::int64_t> sizes;        // non-increasing
  std::vector<std::int32_t> input_index;  // sizes[p] came from raw[input_index[p]]
  Rational capacity;
  std::optional<int> bins;
  std::optional<int> stages;
  std::optional<int> split_bound;

  int n() const { return static_cast<int>(sizes.size()); }

  std::int64_t total() const {
    return std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
  }

  /// Sizes in the order they were originally given.
  std::vector<std::int64_t> original_sizes() const {
    std::vector<std::int64_t> out(sizes.size());
    for (std::size_t p = 0; p < sizes.size(); ++p) out[input_index[p]] = sizes[p];
    return out;
  }
};

inline Instance validate_instance(const std::vector<std::int64_t>& raw, Rational capacity) {
  if (raw.empty()) throw Error(Errc::empty_instance, "no object sizes given");
  if (capacity.sign() <= 0)
    throw Error(Errc::non_positive_capacity, "capacity " + capacity.str());
  __int128 sum = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] <= 0)
      throw Error(Errc::non_positive_size,
                  "size " + std::to_string(raw[i]) + " at position " + std::to_string(i));
    sum += raw[i];
  }
  if (sum > (static_cast<__int128>(1) << 62))
    throw Error(Errc::instance_too_large, "total size exceeds supported range");

  Instance inst;
  inst.capacity = std::move(capacity);
  inst.input_index.resize(raw.size());
  std::iota(inst.input_index.begin(), inst.input_index.end(), 0);
  // Stable: equal sizes keep their input order.
  std::stable_sort(inst.input_index.begin(), inst.input_index.end(),
                   [&](std::int32_t a, std::int32_t b) { return raw[a] > raw[b]; });
  inst.sizes.resize(raw.size());
  for (std::size_t p = 0; p < raw.size(); ++p) inst.sizes[p] = raw[inst.input_index[p]];
  return inst;
}

/// ceil(S/C), the trivial bin count lower bound, computed exactly.
inline std::int64_t lower_bound_bins(const Instance& inst) {
  mpz_class s = Rational::mpz_from_ll(inst.total());
  mpz_class m = ceil_div(s * inst.capacity.den(), inst.capacity.num());
  if (!m.fits_slong_p()) throw Error(Errc::instance_too_large, "bin count exceeds 64 bits");
  return m.get_si();
}

}  // namespace balpack
