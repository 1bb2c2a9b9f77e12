#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "balpack/errors.hpp"
#include "balpack/instance.hpp"
#include "balpack/kbfbp.hpp"
#include "balpack/rational.hpp"

namespace balpack {

enum class ReductionKind { partition, subset_third };

/// A hardness-reduction output: the balanced-packing instance together with
/// the padding data needed to map witnesses back to certificates. The padded
/// elements sit at the end of the instance's original size order.
struct ReducedInstance {
  Instance instance;
  ReductionKind kind = ReductionKind::partition;
  std::int64_t pad_value = 0;
  int pad_count = 0;
  int residue = 0;
  std::vector<std::int64_t> source;  // the original multiset A, input order
};

namespace detail {
inline std::int64_t checked_sum(const std::vector<std::int64_t>& a) {
  __int128 s = 0;
  for (std::int64_t v : a) {
    if (v <= 0) throw Error(Errc::non_positive_size, "size " + std::to_string(v));
    s += v;
  }
  if (s > (static_cast<__int128>(1) << 61))
    throw Error(Errc::instance_too_large, "sum exceeds supported range");
  return static_cast<std::int64_t>(s);
}
}  // namespace detail

/// Partition instance A -> 2-BFBP(A + {S/2+4-r, S/2+4-r}, 2(S+4-r)/3, 3)
/// with r = S mod 3.
inline ReducedInstance partition_to_2bfbp(const std::vector<std::int64_t>& A) {
  const std::int64_t S = detail::checked_sum(A);
  std::int64_t maxv = *std::max_element(A.begin(), A.end());
  if (S % 2 != 0 || 2 * maxv > S || S <= 8)
    throw Error(Errc::trivial_instance,
                "partition instance outside the reduction's preconditions");
  const int r = static_cast<int>(S % 3);
  const std::int64_t pad = S / 2 + 4 - r;
  std::vector<std::int64_t> sizes = A;
  sizes.push_back(pad);
  sizes.push_back(pad);

  ReducedInstance out;
  out.instance = validate_instance(sizes, Rational(2 * (S + 4 - r), 3));
  out.instance.bins = 3;
  out.instance.split_bound = 2;
  out.kind = ReductionKind::partition;
  out.pad_value = pad;
  out.pad_count = 2;
  out.residue = r;
  out.source = A;
  return out;
}

/// Subset-sum-third instance A -> 3-BFBP(A + 3x{2S/3+r+1}, 3(S+r+1)/4, 4)
/// with r = S mod 2.
inline ReducedInstance subsetsum_to_3bfbp(const std::vector<std::int64_t>& A) {
  const std::int64_t S = detail::checked_sum(A);
  std::int64_t maxv = *std::max_element(A.begin(), A.end());
  if (S % 3 != 0 || 3 * maxv > 2 * S || S <= 3)
    throw Error(Errc::trivial_instance,
                "subset-sum-third instance outside the reduction's preconditions");
  const int r = static_cast<int>(S % 2);
  const std::int64_t pad = 2 * S / 3 + r + 1;
  std::vector<std::int64_t> sizes = A;
  for (int t = 0; t < 3; ++t) sizes.push_back(pad);

  ReducedInstance out;
  out.instance = validate_instance(sizes, Rational(3 * (S + r + 1), 4));
  out.instance.bins = 4;
  out.instance.split_bound = 3;
  out.kind = ReductionKind::subset_third;
  out.pad_value = pad;
  out.pad_count = 3;
  out.residue = r;
  out.source = A;
  return out;
}

/// Recovers the equal-sum partition (A1, A2) from a valid 2-BFBP witness:
/// the two bins with factor 2/3 carry one side each.
inline std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> extract_partition(
    const KbfbpWitness& w, const ReducedInstance& red) {
  if (red.kind != ReductionKind::partition)
    throw Error(Errc::invalid_input, "witness is not for a partition reduction");
  const int n = red.instance.n();
  const int m = 3;
  if (static_cast<int>(w.x.size()) != n || static_cast<int>(w.alpha.size()) != m)
    throw Error(Errc::dimension_mismatch, "witness shape does not match the reduced instance");

  std::vector<int> two_thirds, one_third;
  const Rational tt(2, 3), ot(1, 3);
  for (int j = 0; j < m; ++j) {
    if (w.alpha[j] == tt)
      two_thirds.push_back(j);
    else if (w.alpha[j] == ot)
      one_third.push_back(j);
  }
  if (two_thirds.size() != 2 || one_third.size() != 1)
    throw Error(Errc::malformed_witness, "proportionality factors are not {2/3, 2/3, 1/3}");

  const int n_src = n - red.pad_count;
  std::vector<std::int64_t> a1, a2;
  for (int i = 0; i < n_src; ++i) {
    if (w.x[i][two_thirds[0]]) a1.push_back(red.source[i]);
    if (w.x[i][two_thirds[1]]) a2.push_back(red.source[i]);
  }
  const std::int64_t S = detail::checked_sum(red.source);
  auto sum_of = [](const std::vector<std::int64_t>& v) {
    std::int64_t s = 0;
    for (auto x : v) s += x;
    return s;
  };
  if (a1.size() + a2.size() != static_cast<std::size_t>(n_src) || 2 * sum_of(a1) != S ||
      2 * sum_of(a2) != S)
    throw Error(Errc::malformed_witness, "recovered sides do not halve the sum");
  return {std::move(a1), std::move(a2)};
}

/// Recovers a subset of A with sum S/3 from a valid 3-BFBP witness by
/// scanning the eight candidate sets: objects allocated to bin b, and objects
/// not allocated to bin b, for each of the four bins.
inline std::vector<std::int64_t> extract_subset_third(const KbfbpWitness& w,
                                                      const ReducedInstance& red) {
  if (red.kind != ReductionKind::subset_third)
    throw Error(Errc::invalid_input, "witness is not for a subset-sum-third reduction");
  const int n = red.instance.n();
  const int m = 4;
  if (static_cast<int>(w.x.size()) != n || static_cast<int>(w.alpha.size()) != m)
    throw Error(Errc::dimension_mismatch, "witness shape does not match the reduced instance");

  const std::int64_t S = detail::checked_sum(red.source);
  const std::int64_t target = S + red.residue + 1;  // S'/3
  const int n_src = n - red.pad_count;
  std::vector<std::int64_t> all = red.instance.original_sizes();

  auto try_candidate = [&](auto member) -> std::optional<std::vector<std::int64_t>> {
    std::int64_t sum = 0;
    int pads = 0;
    std::vector<std::int64_t> picked;
    for (int i = 0; i < n; ++i) {
      if (!member(i)) continue;
      sum += all[i];
      if (i >= n_src)
        ++pads;
      else
        picked.push_back(red.source[i]);
    }
    if (sum != target) return std::nullopt;
    if (pads != 1)
      throw Error(Errc::malformed_witness, "sum-S'/3 set does not hold exactly one pad");
    return picked;
  };

  for (int b = 0; b < m; ++b) {
    if (auto res = try_candidate([&](int i) { return w.x[i][b] != 0; })) return *res;
    if (auto res = try_candidate([&](int i) { return w.x[i][b] == 0; })) return *res;
  }
  throw Error(Errc::malformed_witness, "no candidate set sums to S'/3");
}

namespace detail {
/// Lexicographically-first (by index) subset of the given sum, include-first
/// depth-first search with suffix-sum pruning.
inline std::optional<std::vector<int>> first_subset_with_sum(
    const std::vector<std::int64_t>& a, std::int64_t target) {
  const int n = static_cast<int>(a.size());
  std::vector<std::int64_t> suffix(n + 1, 0);
  for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + a[i];
  std::vector<int> chosen;
  std::function<bool(int, std::int64_t)> dfs = [&](int i, std::int64_t need) -> bool {
    if (need == 0) return true;
    if (i == n || need < 0 || suffix[i] < need) return false;
    chosen.push_back(i);
    if (dfs(i + 1, need - a[i])) return true;
    chosen.pop_back();
    return dfs(i + 1, need);
  };
  if (!dfs(0, target)) return std::nullopt;
  return chosen;
}
}  // namespace detail

/// Exhaustive equal-sum split; the returned pair lists values of the
/// lexicographically first qualifying index subset and its complement.
inline std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
brute_force_partition(const std::vector<std::int64_t>& A) {
  if (A.size() > 24) throw Error(Errc::instance_too_large, "brute force limited to 24 elements");
  const std::int64_t S = detail::checked_sum(A);
  if (S % 2 != 0) return std::nullopt;
  auto idx = detail::first_subset_with_sum(A, S / 2);
  if (!idx) return std::nullopt;
  std::vector<bool> in(A.size(), false);
  for (int i : *idx) in[i] = true;
  std::vector<std::int64_t> a1, a2;
  for (std::size_t i = 0; i < A.size(); ++i) (in[i] ? a1 : a2).push_back(A[i]);
  if (a1.empty() || a2.empty()) return std::nullopt;
  return std::make_pair(std::move(a1), std::move(a2));
}

/// Exhaustive search for a subset of sum S/3.
inline std::optional<std::vector<std::int64_t>> brute_force_subset_third(
    const std::vector<std::int64_t>& A) {
  if (A.size() > 24) throw Error(Errc::instance_too_large, "brute force limited to 24 elements");
  const std::int64_t S = detail::checked_sum(A);
  if (S % 3 != 0) throw Error(Errc::sum_not_divisible, "sum is not divisible by 3");
  auto idx = detail::first_subset_with_sum(A, S / 3);
  if (!idx) return std::nullopt;
  std::vector<std::int64_t> out;
  for (int i : *idx) out.push_back(A[i]);
  return out;
}

}  // namespace balpack
