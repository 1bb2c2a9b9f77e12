#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "balpack/bmbp.hpp"
#include "balpack/errors.hpp"
#include "balpack/instance.hpp"
#include "balpack/kbfbp.hpp"
#include "balpack/rational.hpp"

namespace balpack {

struct Violation {
  std::string constraint;
  std::vector<int> subject;  // 1-based indices of the offending row
  Rational lhs;
  Rational rhs;
};

struct VerificationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string constraint, std::vector<int> subject, Rational lhs, Rational rhs) {
    ok = false;
    violations.push_back({std::move(constraint), std::move(subject), std::move(lhs), std::move(rhs)});
  }
};

/// Checks a (x, alpha) witness against the balanced fractional model with
/// split bound k, taking lambda_ij = alpha_j * x_ij and all m bins available.
/// Witness rows follow the original input order of the instance sizes.
inline VerificationReport check_kbfbp(const Instance& inst, const KbfbpWitness& w, int k) {
  const int n = inst.n();
  const int m = static_cast<int>(w.alpha.size());
  if (static_cast<int>(w.x.size()) != n)
    throw Error(Errc::dimension_mismatch, "witness has wrong row count");
  for (const auto& row : w.x)
    if (static_cast<int>(row.size()) != m)
      throw Error(Errc::dimension_mismatch, "witness has ragged rows");

  VerificationReport rep;
  for (int j = 0; j < m; ++j)
    if (w.alpha[j].sign() < 0 || w.alpha[j] > Rational(1))
      rep.add("alpha_bound", {j + 1}, w.alpha[j], Rational(1));

  std::vector<std::int64_t> sizes = inst.original_sizes();
  std::vector<Rational> load(m, Rational(0));
  for (int i = 0; i < n; ++i) {
    int splits = 0;
    Rational demand(0);
    for (int j = 0; j < m; ++j) {
      if (w.x[i][j] == 0) continue;
      ++splits;
      demand += w.alpha[j];
      load[j] += Rational(sizes[i]) * w.alpha[j];
    }
    if (splits > k) rep.add("split", {i + 1}, Rational(splits), Rational(k));
    if (demand != Rational(1)) rep.add("dem", {i + 1}, demand, Rational(1));
  }
  for (int j = 0; j < m; ++j)
    if (load[j] > inst.capacity) rep.add("cap", {j + 1}, load[j], inst.capacity);
  return rep;
}

/// Checks a multistage assignment list against the staged balanced model:
/// per-(bin, stage) equal fractions, at most one bin per object per stage,
/// exact demand per object, and per-bin capacity over all stages.
inline VerificationReport check_bmbp(const Instance& inst,
                                     const std::vector<PlanAssignment>& assignments, int bins,
                                     int k_stages) {
  const int n = inst.n();
  if (bins < 1 || k_stages < 1)
    throw Error(Errc::dimension_mismatch, "bins and stages must be positive");
  for (const auto& a : assignments) {
    if (a.object < 1 || a.object > n || a.bin < 1 || a.bin > bins || a.stage < 1 ||
        a.stage > k_stages)
      throw Error(Errc::dimension_mismatch, "assignment index out of range");
  }

  VerificationReport rep;
  std::vector<std::int64_t> sizes = inst.original_sizes();
  std::vector<Rational> demand(n, Rational(0));
  std::vector<Rational> load(bins, Rational(0));
  std::map<std::pair<int, int>, Rational> stage_alpha;       // (bin, stage) -> factor
  std::map<std::pair<int, int>, int> object_stage_use;       // (object, stage) -> bins hit

  for (const auto& a : assignments) {
    if (a.fraction.sign() < 0 || a.fraction > Rational(1))
      rep.add("frac_bound", {a.object, a.bin, a.stage}, a.fraction, Rational(1));
    demand[a.object - 1] += a.fraction;
    load[a.bin - 1] += Rational(sizes[a.object - 1]) * a.fraction;
    if (a.fraction.sign() != 0) {
      auto [it, fresh] = stage_alpha.emplace(std::make_pair(a.bin, a.stage), a.fraction);
      if (!fresh && it->second != a.fraction)
        rep.add("balance", {a.bin, a.stage, a.object}, a.fraction, it->second);
      int& uses = object_stage_use[{a.object, a.stage}];
      if (++uses > 1) rep.add("onebin", {a.object, a.stage}, Rational(uses), Rational(1));
    }
  }
  for (int i = 0; i < n; ++i)
    if (demand[i] != Rational(1)) rep.add("dem", {i + 1}, demand[i], Rational(1));
  for (int j = 0; j < bins; ++j)
    if (load[j] > inst.capacity) rep.add("cap", {j + 1}, load[j], inst.capacity);
  return rep;
}

inline VerificationReport check_bmbp(const Instance& inst, const TwoStagePlan& plan) {
  return check_bmbp(inst, plan.assignments, plan.bins, 2);
}

}  // namespace balpack
