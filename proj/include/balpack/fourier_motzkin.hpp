#pragma once

#include <map>
#include <optional>
#include <vector>

#include "balpack/errors.hpp"
#include "balpack/rational.hpp"

namespace balpack {

/// One inequality  coef . x <= rhs.
struct FmRow {
  std::vector<Rational> coef;
  Rational rhs;
};

/// Exact Fourier-Motzkin feasibility with witness extraction. Eliminates
/// variables from the highest index down, keeping the pre-elimination system
/// of each level for back-substitution. Returns a feasible point, or nothing.
inline std::optional<std::vector<Rational>> fm_solve(std::vector<FmRow> rows, int nvars) {
  std::vector<std::vector<FmRow>> levels(nvars);

  auto normalized_key = [](const FmRow& r) {
    std::vector<Rational> key = r.coef;
    key.push_back(r.rhs);
    // Scale so the first nonzero entry is +-1; keeps the dedup map small.
    for (const auto& c : key)
      if (c.sign() != 0) {
        Rational s = (c.sign() > 0 ? c : -c);
        for (auto& k : key) k /= s;
        break;
      }
    return key;
  };

  for (int v = nvars - 1; v >= 0; --v) {
    levels[v] = rows;
    std::vector<FmRow> pos, neg, rest;
    for (auto& r : rows) {
      int s = r.coef[v].sign();
      if (s > 0)
        pos.push_back(std::move(r));
      else if (s < 0)
        neg.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    std::map<std::vector<Rational>, bool> seen;
    std::vector<FmRow> next;
    auto push_unique = [&](FmRow r) {
      r.coef.resize(v);  // drop the eliminated (zero) column
      auto key = normalized_key(r);
      if (seen.emplace(std::move(key), true).second) next.push_back(std::move(r));
    };
    for (auto& r : rest) push_unique(std::move(r));
    for (const auto& p : pos)
      for (const auto& n : neg) {
        // p: cp*xv + P(x) <= bp  (cp>0);  n: cn*xv + N(x) <= bn  (cn<0)
        // combine: P/cp - N/cn <= bp/cp - bn/cn
        FmRow comb;
        comb.coef.resize(v, Rational(0));
        const Rational& cp = p.coef[v];
        const Rational& cn = n.coef[v];
        for (int u = 0; u < v; ++u) comb.coef[u] = p.coef[u] / cp - n.coef[u] / cn;
        comb.rhs = p.rhs / cp - n.rhs / cn;
        push_unique(std::move(comb));
      }
    rows = std::move(next);
  }

  // Only constant rows remain: 0 <= rhs must hold.
  for (const auto& r : rows)
    if (r.rhs.sign() < 0) return std::nullopt;

  // Back-substitute, lowest variable first.
  std::vector<Rational> x(nvars, Rational(0));
  for (int v = 0; v < nvars; ++v) {
    bool has_lb = false, has_ub = false;
    Rational lb, ub;
    for (const auto& r : levels[v]) {
      int s = r.coef[v].sign();
      if (s == 0) continue;
      Rational partial = r.rhs;
      for (int u = 0; u < v; ++u)
        if (r.coef[u].sign() != 0) partial -= r.coef[u] * x[u];
      Rational bound = partial / r.coef[v];
      if (s > 0) {
        if (!has_ub || bound < ub) { ub = bound; has_ub = true; }
      } else {
        if (!has_lb || bound > lb) { lb = bound; has_lb = true; }
      }
    }
    if (has_lb && has_ub && lb > ub)
      throw Error(Errc::internal_invariant, "inconsistent bounds after elimination");
    if (has_lb)
      x[v] = lb;
    else if (has_ub)
      x[v] = (ub < Rational(0)) ? ub : Rational(0);
    else
      x[v] = Rational(0);
  }
  return x;
}

}  // namespace balpack
