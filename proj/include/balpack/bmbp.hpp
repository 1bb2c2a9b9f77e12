#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "balpack/errors.hpp"
#include "balpack/instance.hpp"
#include "balpack/rational.hpp"

namespace balpack {

/// Phase-I result: whole objects grouped into m boxes. Boxes hold 1-based
/// object ids in original input order; box_sizes[j] is the exact sum of the
/// sizes in box j.
struct Packing {
  std::vector<std::vector<std::int32_t>> boxes;
  std::vector<Rational> box_sizes;
};

struct PlanAssignment {
  std::int32_t object;  // 1-based, original input order
  std::int32_t bin;     // 1-based
  std::int32_t stage;   // 1 or 2
  Rational fraction;
};

/// Phase-II result: processing order sigma (1-based box ids), the per-bin
/// stage coefficients, and the induced object assignments.
struct TwoStagePlan {
  int bins = 0;
  Rational tilde_c;
  std::vector<int> sigma;
  std::vector<Rational> lambda1;
  std::vector<Rational> lambda2;
  std::vector<PlanAssignment> assignments;
  std::vector<Rational> bin_loads;
};

struct InflationResult {
  std::vector<Rational> inflated;  // non-increasing
  Rational level;                  // L*, the common value of the raised objects
  int raised_count = 0;
};

namespace detail {

struct PackCore {
  std::vector<std::vector<std::int32_t>> boxes;  // sorted-position indices
  std::vector<std::int64_t> box_scaled;
};

/// Greedy packing over already-sorted (non-increasing) scaled sizes: each
/// object goes to the currently smallest box, ties to the smallest index.
inline PackCore pack_core(const std::vector<std::int64_t>& scaled, int m) {
  PackCore out;
  out.boxes.resize(m);
  out.box_scaled.assign(m, 0);
  using Entry = std::pair<std::int64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (int j = 0; j < m; ++j) heap.emplace(0, j);
  for (std::size_t p = 0; p < scaled.size(); ++p) {
    auto [load, j] = heap.top();
    heap.pop();
    out.boxes[j].push_back(static_cast<std::int32_t>(p));
    out.box_scaled[j] = load + scaled[p];
    heap.emplace(out.box_scaled[j], j);
  }
  return out;
}

struct DistributeCore {
  std::vector<int> sigma;  // 0-based box indices
  std::vector<Rational> lambda1;
  std::vector<Rational> lambda2;
};

/// Circular two-stage distribution over scaled box sizes. All arithmetic is
/// exact; the scale factor cancels out of every coefficient.
inline DistributeCore distribute_core(const std::vector<std::int64_t>& box) {
  const int m = static_cast<int>(box.size());
  if (m < 1) throw Error(Errc::dimension_mismatch, "no boxes");
  __int128 total = 0;
  std::int64_t bmax = box[0], bmin = box[0];
  for (std::int64_t b : box) {
    if (b <= 0) throw Error(Errc::precondition_violated, "empty or negative box");
    total += b;
    bmax = std::max(bmax, b);
    bmin = std::min(bmin, b);
  }
  if (static_cast<__int128>(m) * (bmax - bmin) > total)
    throw Error(Errc::precondition_violated, "box spread exceeds the average box size");

  // Integer thresholds for comparisons against the average total/m.
  const std::int64_t ceil_avg = static_cast<std::int64_t>((total + m - 1) / m);
  const std::int64_t floor_avg = static_cast<std::int64_t>(total / m);
  const int kLowIdx = std::numeric_limits<int>::min();

  std::set<std::pair<std::int64_t, int>> rem;
  for (int j = 0; j < m; ++j) rem.emplace(box[j], j);

  auto take_min_above = [&]() {
    auto it = rem.lower_bound({ceil_avg, kLowIdx});
    if (it == rem.end())
      throw Error(Errc::internal_invariant, "no box at or above the average remains");
    return it;
  };
  auto take_max_below = [&]() {
    auto it = rem.lower_bound({floor_avg + 1, kLowIdx});
    if (it == rem.begin())
      throw Error(Errc::internal_invariant, "no box at or below the average remains");
    --it;
    // Among boxes sharing this size, take the smallest index.
    return rem.lower_bound({it->first, kLowIdx});
  };

  DistributeCore out;
  out.sigma.reserve(m);
  out.lambda1.resize(m);
  out.lambda2.resize(m);
  __int128 taken = 0;  // sum of box sizes chosen so far
  for (int step = 1; step <= m; ++step) {
    std::set<std::pair<std::int64_t, int>>::iterator it;
    if (step == 1) {
      it = take_min_above();
    } else {
      bool below = static_cast<__int128>(m) * taken <= static_cast<__int128>(step - 1) * total;
      it = below ? take_min_above() : take_max_below();
    }
    auto [size, j] = *it;
    rem.erase(it);
    out.sigma.push_back(j);
    taken += size;
    __int128 numer = static_cast<__int128>(m) * taken - static_cast<__int128>(m) * bmax -
                     static_cast<__int128>(step - 2) * total;
    out.lambda1[step - 1] = Rational::from_i128(numer, static_cast<__int128>(m) * size);
    if (step >= 2) out.lambda2[step - 2] = Rational(1) - out.lambda1[step - 1];
  }
  out.lambda2[m - 1] = Rational(1) - out.lambda1[0];
  return out;
}

/// Builds the per-object assignment list; zero fractions are omitted.
inline std::vector<PlanAssignment> build_assignments(
    const std::vector<std::vector<std::int32_t>>& boxes, const DistributeCore& d) {
  const int m = static_cast<int>(boxes.size());
  std::vector<PlanAssignment> out;
  for (int bin = 0; bin < m; ++bin) {
    const auto& stage1_box = boxes[d.sigma[bin]];
    if (d.lambda1[bin].sign() != 0)
      for (std::int32_t obj : stage1_box)
        out.push_back({obj, bin + 1, 1, d.lambda1[bin]});
    const auto& stage2_box = boxes[d.sigma[(bin + 1) % m]];
    if (d.lambda2[bin].sign() != 0)
      for (std::int32_t obj : stage2_box)
        out.push_back({obj, bin + 1, 2, d.lambda2[bin]});
  }
  return out;
}

}  // namespace detail

/// Algorithm: objects in non-increasing size order, each into the currently
/// smallest box (smallest index on ties).
inline Packing pack_phase1(const Instance& inst, int m) {
  if (m < 1) throw Error(Errc::precondition_violated, "m must be positive");
  auto core = detail::pack_core(inst.sizes, m);
  Packing out;
  out.boxes.resize(m);
  out.box_sizes.reserve(m);
  for (int j = 0; j < m; ++j) {
    out.boxes[j].reserve(core.boxes[j].size());
    for (std::int32_t p : core.boxes[j])
      out.boxes[j].push_back(inst.input_index[p] + 1);
    out.box_sizes.push_back(Rational(core.box_scaled[j]));
  }
  return out;
}

/// Circular two-stage distribution of packed boxes onto bins so that every
/// bin ends with load exactly tilde_c.
inline TwoStagePlan distribute_phase2(const Packing& packing, const Rational& tilde_c) {
  const int m = static_cast<int>(packing.boxes.size());
  if (static_cast<int>(packing.box_sizes.size()) != m)
    throw Error(Errc::dimension_mismatch, "boxes and box_sizes disagree");
  Rational sum(0);
  for (const auto& c : packing.box_sizes) sum += c;
  if (sum != Rational(m) * tilde_c)
    throw Error(Errc::precondition_violated, "box sizes do not sum to m * tilde_c");

  // Bring the rational box sizes to a common integer scale.
  mpz_class q(1);
  for (const auto& c : packing.box_sizes) {
    mpz_class d = c.den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
    q = q / g * d;
  }
  std::vector<std::int64_t> scaled(m);
  for (int j = 0; j < m; ++j) {
    mpz_class v = packing.box_sizes[j].num() * (q / packing.box_sizes[j].den());
    if (!v.fits_slong_p()) throw Error(Errc::instance_too_large, "scaled box size overflow");
    scaled[j] = v.get_si();
  }

  auto core = detail::distribute_core(scaled);
  TwoStagePlan plan;
  plan.bins = m;
  plan.tilde_c = tilde_c;
  plan.sigma.reserve(m);
  for (int j : core.sigma) plan.sigma.push_back(j + 1);
  plan.lambda1 = core.lambda1;
  plan.lambda2 = core.lambda2;
  plan.assignments = detail::build_assignments(packing.boxes, core);
  plan.bin_loads.reserve(m);
  for (int bin = 0; bin < m; ++bin) {
    Rational load = plan.lambda1[bin] * packing.box_sizes[core.sigma[bin]] +
                    plan.lambda2[bin] * packing.box_sizes[core.sigma[(bin + 1) % m]];
    plan.bin_loads.push_back(std::move(load));
  }
  return plan;
}

/// Raises the smallest sizes to the common level L* so that the size spread
/// drops to at most the average box size. L* is found exactly as the fixed
/// point of L = a_1 - (1/m) * sum_i max(a_i, L) by scanning the sorted
/// breakpoints; no inflation happens when the spread is already small enough.
inline InflationResult inflate_sizes(const Instance& inst, int m) {
  const int n = inst.n();
  if (m > n) throw Error(Errc::precondition_violated, "m exceeds the number of objects");
  const std::int64_t a1 = inst.sizes.front(), an = inst.sizes.back();
  if (Rational(a1 - an) > inst.capacity)
    throw Error(Errc::precondition_violated, "size spread exceeds the capacity");
  const std::int64_t total = inst.total();

  InflationResult out;
  if (static_cast<__int128>(a1 - an) * m <= total) {
    out.level = Rational(an);
    out.raised_count = 0;
    out.inflated.reserve(n);
    for (std::int64_t a : inst.sizes) out.inflated.push_back(Rational(a));
    return out;
  }

  // Scan t = number of raised (smallest) objects. With suffix_t the sum of
  // the t smallest sizes, the segment solution is
  //   L(t) = (m*a_1 - total + suffix_t) / (m + t),
  // valid when it lies between the largest raised and smallest kept size.
  __int128 suffix = 0;
  Rational level;
  bool found = false;
  for (int t = 1; t < n; ++t) {
    suffix += inst.sizes[n - t];
    __int128 numer = static_cast<__int128>(m) * a1 - total + suffix;
    Rational cand = Rational::from_i128(numer, m + t);
    if (cand >= Rational(inst.sizes[n - t]) && cand <= Rational(inst.sizes[n - t - 1])) {
      level = cand;
      found = true;
      break;
    }
  }
  if (!found) throw Error(Errc::internal_invariant, "no inflation level found");

  out.level = level;
  out.inflated.reserve(n);
  for (std::int64_t a : inst.sizes) {
    Rational ra(a);
    if (ra < level) {
      out.inflated.push_back(level);
      ++out.raised_count;
    } else {
      out.inflated.push_back(std::move(ra));
    }
  }
  return out;
}

/// Full pipeline: inflate, pack, distribute, then deflate back to the
/// original sizes (fractions unchanged, loads recomputed).
inline TwoStagePlan solve_bmbp(const Instance& inst) {
  const int n = inst.n();
  std::int64_t m64 = lower_bound_bins(inst);
  if (m64 > n)
    throw Error(Errc::precondition_violated,
                "needs " + std::to_string(m64) + " bins for " + std::to_string(n) + " objects");
  const int m = static_cast<int>(m64);
  InflationResult infl = inflate_sizes(inst, m);

  // Common integer scale: every inflated size is either an original integer
  // or L*, so the denominator of L* scales everything.
  mpz_class qz = infl.level.den();
  if (!qz.fits_slong_p()) throw Error(Errc::instance_too_large, "inflation denominator overflow");
  const std::int64_t q = qz.get_si();
  std::vector<std::int64_t> scaled(n);
  __int128 scaled_total = 0;
  for (int p = 0; p < n; ++p) {
    const Rational& r = infl.inflated[p];
    __int128 v = static_cast<__int128>(r.num_ll()) * (q / r.den_ll());
    if (v > std::numeric_limits<std::int64_t>::max())
      throw Error(Errc::instance_too_large, "scaled size overflow");
    scaled[p] = static_cast<std::int64_t>(v);
    scaled_total += v;
  }

  auto pack = detail::pack_core(scaled, m);
  auto dist = detail::distribute_core(pack.box_scaled);

  // Map sorted positions back to 1-based original object ids.
  std::vector<std::vector<std::int32_t>> boxes(m);
  for (int j = 0; j < m; ++j) {
    boxes[j].reserve(pack.boxes[j].size());
    for (std::int32_t p : pack.boxes[j]) boxes[j].push_back(inst.input_index[p] + 1);
  }

  TwoStagePlan plan;
  plan.bins = m;
  plan.tilde_c = Rational::from_i128(scaled_total, static_cast<__int128>(m) * q);
  plan.sigma.reserve(m);
  for (int j : dist.sigma) plan.sigma.push_back(j + 1);
  plan.lambda1 = dist.lambda1;
  plan.lambda2 = dist.lambda2;
  plan.assignments = detail::build_assignments(boxes, dist);

  // Deflate: recompute loads against the original sizes.
  std::vector<std::int64_t> orig = inst.original_sizes();
  plan.bin_loads.assign(m, Rational(0));
  for (const auto& a : plan.assignments)
    plan.bin_loads[a.bin - 1] += Rational(orig[a.object - 1]) * a.fraction;
  return plan;
}

}  // namespace balpack
