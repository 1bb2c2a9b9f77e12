#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "balpack/errors.hpp"
#include "balpack/fourier_motzkin.hpp"
#include "balpack/instance.hpp"
#include "balpack/rational.hpp"

namespace balpack {

/// A 0/1 object-by-bin split pattern; rows[i] is the bin bitmask of object i
/// (rows follow the instance's internal non-increasing size order).
struct SplitPattern {
  int n = 0;
  int m = 0;
  std::vector<std::uint32_t> rows;
};

/// Feasibility witness: incidence matrix x (original input order) and the
/// per-bin proportionality factors alpha.
struct KbfbpWitness {
  std::vector<std::vector<int>> x;
  std::vector<Rational> alpha;
};

struct EnumerateOptions {
  bool prune_bin_symmetry = false;
};

namespace detail {

/// Nonempty bin subsets of size <= k, ordered by (cardinality, lexicographic
/// order of the index list).
inline std::vector<std::uint32_t> row_choices(int m, int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask)
    if (std::popcount(mask) <= k) out.push_back(mask);
  auto indices = [m](std::uint32_t mask) {
    std::vector<int> v;
    for (int j = 0; j < m; ++j)
      if (mask >> j & 1) v.push_back(j);
    return v;
  };
  std::sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return indices(a) < indices(b);
  });
  return out;
}

inline void check_enumeration_guard(int n, int m, int k) {
  if (m < 1 || k < 1 || n < 1) throw Error(Errc::invalid_input, "n, m, k must be positive");
  if (m > 30) throw Error(Errc::instance_too_large, "too many bins");
  __int128 choices = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask)
    if (std::popcount(mask) <= k) ++choices;
  __int128 count = 1;
  const __int128 limit = 100000000;  // 1e8
  for (int i = 0; i < n; ++i) {
    count *= choices;
    if (count > limit)
      throw Error(Errc::instance_too_large, "pattern space exceeds the enumeration guard");
  }
}

/// True when the columns of the pattern, read as bit strings over the rows,
/// are in non-increasing order; every pattern has exactly one such
/// representative under bin permutation.
inline bool columns_canonical(const SplitPattern& p) {
  if (p.n > 64) return true;  // pruning disabled for very tall patterns
  std::uint64_t prev = ~0ull;
  for (int j = 0; j < p.m; ++j) {
    std::uint64_t key = 0;
    for (int i = 0; i < p.n; ++i) key = key << 1 | (p.rows[i] >> j & 1);
    if (key > prev) return false;
    prev = key;
  }
  return true;
}

}  // namespace detail

/// Streams every split pattern to the callback; return false from the
/// callback to stop early. Returns true when the stream was exhausted.
inline bool enumerate_patterns(int n, int m, int k, const EnumerateOptions& opts,
                               const std::function<bool(const SplitPattern&)>& fn) {
  detail::check_enumeration_guard(n, m, k);
  auto choices = detail::row_choices(m, k);
  std::vector<std::size_t> digit(n, 0);
  SplitPattern p;
  p.n = n;
  p.m = m;
  p.rows.assign(n, choices[0]);
  for (;;) {
    if (!opts.prune_bin_symmetry || detail::columns_canonical(p)) {
      if (!fn(p)) return false;
    }
    // advance the odometer, last row fastest
    int pos = n - 1;
    while (pos >= 0) {
      if (++digit[pos] < choices.size()) {
        p.rows[pos] = choices[digit[pos]];
        break;
      }
      digit[pos] = 0;
      p.rows[pos] = choices[0];
      --pos;
    }
    if (pos < 0) return true;
  }
}

/// Decides whether proportionality factors alpha in [0,1]^m exist for the
/// given pattern: demand rows sum(j in row_i) alpha_j = 1 are reduced by
/// exact Gaussian elimination, the box bounds 0 <= alpha_j <= min(1, C/s_j)
/// are substituted, and the remaining free variables go through
/// Fourier-Motzkin elimination.
inline std::optional<std::vector<Rational>> feasible_alpha(const SplitPattern& p,
                                                           const Instance& inst) {
  if (p.n != inst.n()) throw Error(Errc::dimension_mismatch, "pattern height != instance size");
  const int m = p.m;
  const Rational& C = inst.capacity;

  std::vector<std::int64_t> bin_sum(m, 0);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < m; ++j)
      if (p.rows[i] >> j & 1) bin_sum[j] += inst.sizes[i];

  // Necessary condition: total deliverable mass must cover the total size.
  {
    Rational deliverable(0);
    std::int64_t total = 0;
    for (int j = 0; j < m; ++j) {
      Rational sj(bin_sum[j]);
      deliverable += (sj <= C) ? sj : C;
    }
    for (int i = 0; i < p.n; ++i) total += inst.sizes[i];
    if (deliverable < Rational(total)) return std::nullopt;
  }

  std::vector<Rational> ub(m);
  for (int j = 0; j < m; ++j) {
    if (bin_sum[j] == 0) {
      ub[j] = Rational(1);
    } else {
      Rational cap = C / Rational(bin_sum[j]);
      ub[j] = (cap < Rational(1)) ? cap : Rational(1);
    }
  }

  // Necessary condition per demand row: the bins it touches must be able to
  // jointly reach fraction 1.
  for (int i = 0; i < p.n; ++i) {
    Rational reach(0);
    for (int j = 0; j < m; ++j)
      if (p.rows[i] >> j & 1) reach += ub[j];
    if (reach < Rational(1)) return std::nullopt;
  }

  // Gaussian elimination on the distinct demand rows.
  std::vector<std::uint32_t> distinct;
  for (std::uint32_t r : p.rows)
    if (std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
  std::vector<std::vector<Rational>> aug;  // m coefficient cols + rhs
  aug.reserve(distinct.size());
  for (std::uint32_t r : distinct) {
    std::vector<Rational> row(m + 1, Rational(0));
    for (int j = 0; j < m; ++j)
      if (r >> j & 1) row[j] = Rational(1);
    row[m] = Rational(1);
    aug.push_back(std::move(row));
  }

  std::vector<int> pivot_row_of_col(m, -1);
  int rank = 0;
  for (int col = 0; col < m && rank < static_cast<int>(aug.size()); ++col) {
    int pr = -1;
    for (int r = rank; r < static_cast<int>(aug.size()); ++r)
      if (aug[r][col].sign() != 0) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(aug[rank], aug[pr]);
    Rational inv = Rational(1) / aug[rank][col];
    for (int c = col; c <= m; ++c) aug[rank][c] *= inv;
    for (int r = 0; r < static_cast<int>(aug.size()); ++r) {
      if (r == rank || aug[r][col].sign() == 0) continue;
      Rational f = aug[r][col];
      for (int c = col; c <= m; ++c) aug[r][c] -= f * aug[rank][c];
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }
  for (int r = rank; r < static_cast<int>(aug.size()); ++r)
    if (aug[r][m].sign() != 0) return std::nullopt;  // 0 = nonzero

  std::vector<int> free_cols;
  for (int col = 0; col < m; ++col)
    if (pivot_row_of_col[col] < 0) free_cols.push_back(col);
  const int nf = static_cast<int>(free_cols.size());
  std::vector<int> free_pos(m, -1);
  for (int t = 0; t < nf; ++t) free_pos[free_cols[t]] = t;

  // Bounds 0 <= alpha_j <= ub_j as inequalities over the free variables.
  std::vector<FmRow> rows;
  for (int j = 0; j < m; ++j) {
    if (free_pos[j] >= 0) {
      FmRow lo, hi;
      lo.coef.assign(nf, Rational(0));
      hi.coef.assign(nf, Rational(0));
      lo.coef[free_pos[j]] = Rational(-1);
      lo.rhs = Rational(0);
      hi.coef[free_pos[j]] = Rational(1);
      hi.rhs = ub[j];
      rows.push_back(std::move(lo));
      rows.push_back(std::move(hi));
    } else {
      // alpha_j = rhs - sum_f coef_f * alpha_f
      const auto& prow = aug[pivot_row_of_col[j]];
      FmRow lo, hi;
      lo.coef.assign(nf, Rational(0));
      hi.coef.assign(nf, Rational(0));
      for (int t = 0; t < nf; ++t) {
        lo.coef[t] = prow[free_cols[t]];
        hi.coef[t] = -prow[free_cols[t]];
      }
      lo.rhs = prow[m];          // alpha_j >= 0
      hi.rhs = ub[j] - prow[m];  // alpha_j <= ub_j
      rows.push_back(std::move(lo));
      rows.push_back(std::move(hi));
    }
  }

  std::vector<Rational> free_val;
  if (nf == 0) {
    for (const auto& r : rows)
      if (r.rhs.sign() < 0) return std::nullopt;
  } else {
    auto sol = fm_solve(std::move(rows), nf);
    if (!sol) return std::nullopt;
    free_val = std::move(*sol);
  }

  std::vector<Rational> alpha(m);
  for (int j = 0; j < m; ++j) {
    if (free_pos[j] >= 0) {
      alpha[j] = free_val[free_pos[j]];
    } else {
      const auto& prow = aug[pivot_row_of_col[j]];
      Rational v = prow[m];
      for (int t = 0; t < nf; ++t) v -= prow[free_cols[t]] * free_val[t];
      alpha[j] = std::move(v);
    }
  }
  return alpha;
}

struct SolveKbfbpOptions {
  bool prune_bin_symmetry = true;
};

/// Exhaustive decision: first feasible (pattern, alpha) pair in enumeration
/// order, canonicalized so zero-factor bins carry no incidences. The witness
/// matrix rows follow the original input order of the sizes.
inline std::optional<KbfbpWitness> solve_kbfbp_decision(const Instance& inst, int m, int k,
                                                        const SolveKbfbpOptions& opts = {}) {
  if (Rational(inst.sizes.front()) > inst.capacity)
    throw Error(Errc::capacity_too_small_for_object,
                "largest object does not fit into a single bin");
  std::optional<KbfbpWitness> found;
  EnumerateOptions eopts;
  eopts.prune_bin_symmetry = opts.prune_bin_symmetry;
  enumerate_patterns(inst.n(), m, k, eopts, [&](const SplitPattern& p) {
    auto alpha = feasible_alpha(p, inst);
    if (!alpha) return true;
    KbfbpWitness w;
    w.alpha = std::move(*alpha);
    w.x.assign(inst.n(), std::vector<int>(m, 0));
    for (int i = 0; i < inst.n(); ++i) {
      int orig = inst.input_index[i];
      for (int j = 0; j < m; ++j)
        if ((p.rows[i] >> j & 1) && w.alpha[j].sign() != 0) w.x[orig][j] = 1;
    }
    found = std::move(w);
    return false;
  });
  return found;
}

/// Classical (unsplit) packing into m bins, by exhaustive assignment with
/// load-symmetry pruning; the k = 1 oracle.
inline bool brute_force_binpacking(const Instance& inst, int m) {
  const int n = inst.n();
  if (n > 20) throw Error(Errc::instance_too_large, "brute force limited to 20 objects");
  if (m < 1) return false;
  // Integer loads: an object fits iff load + a <= floor(C).
  mpz_class capz = floor_div(inst.capacity.num(), inst.capacity.den());
  if (!capz.fits_slong_p()) return true;  // capacity dwarfs every size
  const std::int64_t cap = capz.get_si();
  if (inst.sizes.front() > cap) return false;

  std::vector<std::int64_t> loads(std::min(m, n), 0);
  std::function<bool(int)> dfs = [&](int i) -> bool {
    if (i == n) return true;
    std::int64_t seen_load = -1;
    for (auto& load : loads) {
      if (load == seen_load) continue;  // identical bins, skip repeats
      if (load + inst.sizes[i] > cap) { seen_load = load; continue; }
      seen_load = load;
      load += inst.sizes[i];
      if (dfs(i + 1)) return true;
      load -= inst.sizes[i];
      if (load == 0) break;  // further empty bins are symmetric
    }
    return false;
  };
  return dfs(0);
}

}  // namespace balpack
