#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "balpack/bmbp.hpp"
#include "balpack/verify.hpp"
#include "test_util.hpp"

using namespace balpack;

namespace {

// Independent replay of the greedy rule with a linear scan instead of a heap.
Packing pack_oracle(const Instance& inst, int m) {
  Packing p;
  p.boxes.resize(m);
  p.box_sizes.assign(m, Rational(0));
  for (int pos = 0; pos < inst.n(); ++pos) {
    int best = 0;
    for (int j = 1; j < m; ++j)
      if (p.box_sizes[j] < p.box_sizes[best]) best = j;
    p.boxes[best].push_back(inst.input_index[pos] + 1);
    p.box_sizes[best] += Rational(inst.sizes[pos]);
  }
  return p;
}

std::vector<std::int64_t> box_values(const Packing& p, const Instance& inst, int j) {
  auto orig = inst.original_sizes();
  std::vector<std::int64_t> v;
  for (auto id : p.boxes[j]) v.push_back(orig[id - 1]);
  return v;
}

}  // namespace

TEST_CASE("pack_phase1 reproduces the worked example") {
  Instance inst = validate_instance({8, 7, 6, 5, 4}, Rational(10));
  Packing p = pack_phase1(inst, 3);
  CHECK(box_values(p, inst, 0) == std::vector<std::int64_t>{8});
  CHECK(box_values(p, inst, 1) == std::vector<std::int64_t>{7, 4});
  CHECK(box_values(p, inst, 2) == std::vector<std::int64_t>{6, 5});
  CHECK(p.box_sizes == std::vector<Rational>{Rational(8), Rational(11), Rational(11)});
}

TEST_CASE("pack_phase1 with one object per box") {
  Instance inst = validate_instance({9, 7, 5}, Rational(9));
  Packing p = pack_phase1(inst, 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(p.boxes[j] == std::vector<std::int32_t>{j + 1});
    CHECK(p.box_sizes[j] == Rational(inst.sizes[j]));
  }
}

TEST_CASE("pack_phase1 breaks size ties by smallest box index") {
  Instance inst = validate_instance({5, 5, 5, 5}, Rational(10));
  Packing p = pack_phase1(inst, 2);
  CHECK(p.boxes[0] == std::vector<std::int32_t>{1, 3});
  CHECK(p.boxes[1] == std::vector<std::int32_t>{2, 4});
  CHECK(p.box_sizes[0] == Rational(10));
  CHECK(p.box_sizes[1] == Rational(10));
}

TEST_CASE("greedy step invariant against the linear-scan oracle") {
  SplitMix64 rng(0x5eed0003);
  for (int t = 0; t < 300; ++t) {
    auto gen = random_balanced_instance(rng, 30);
    Instance inst = validate_instance(gen.sizes, Rational(gen.cap_num, gen.cap_den));
    int m = static_cast<int>(rng.range(1, inst.n()));
    Packing fast = pack_phase1(inst, m);
    Packing slow = pack_oracle(inst, m);
    CHECK(fast.boxes == slow.boxes);
    CHECK(fast.box_sizes == slow.box_sizes);
  }
}

TEST_CASE("distribute_phase2 reproduces the worked example") {
  Packing p;
  p.boxes = {{1}, {2, 5}, {3, 4}};
  p.box_sizes = {Rational(8), Rational(11), Rational(11)};
  TwoStagePlan plan = distribute_phase2(p, Rational(10));
  CHECK(plan.sigma == std::vector<int>{2, 1, 3});
  CHECK(plan.lambda1 == std::vector<Rational>{Rational(10, 11), Rational(1), Rational(9, 11)});
  CHECK(plan.lambda2 == std::vector<Rational>{Rational(0), Rational(2, 11), Rational(1, 11)});
  for (const auto& load : plan.bin_loads) CHECK(load == Rational(10));
}

TEST_CASE("distribute_phase2 on equal boxes gives whole first-stage shares") {
  Packing p;
  p.boxes = {{1}, {2}, {3}, {4}};
  p.box_sizes = {Rational(6), Rational(6), Rational(6), Rational(6)};
  TwoStagePlan plan = distribute_phase2(p, Rational(6));
  for (int j = 0; j < 4; ++j) {
    CHECK(plan.lambda1[j] == Rational(1));
    CHECK(plan.lambda2[j] == Rational(0));
  }
  // with all second-stage shares zero, every object stays whole in one bin
  for (const auto& a : plan.assignments) CHECK(a.stage == 1);
}

TEST_CASE("distribute_phase2 rejects a spread above the average") {
  Packing p;
  p.boxes = {{1}, {2}};
  p.box_sizes = {Rational(10), Rational(2)};
  CHECK_THROWS_WITH_AS(distribute_phase2(p, Rational(6)),
                       doctest::Contains("PreconditionViolated"), Error);
}

TEST_CASE("distribute_phase2 rejects a bad average") {
  Packing p;
  p.boxes = {{1}, {2}};
  p.box_sizes = {Rational(6), Rational(6)};
  CHECK_THROWS_WITH_AS(distribute_phase2(p, Rational(7)),
                       doctest::Contains("PreconditionViolated"), Error);
}

TEST_CASE("inflate_sizes leaves small-spread instances unchanged") {
  Instance inst = validate_instance({8, 7, 6, 5, 4}, Rational(10));
  InflationResult r = inflate_sizes(inst, 3);
  CHECK(r.raised_count == 0);
  for (int i = 0; i < 5; ++i) CHECK(r.inflated[i] == Rational(inst.sizes[i]));
}

TEST_CASE("inflate_sizes solves the level exactly") {
  Instance inst = validate_instance({10, 1, 1}, Rational(10));
  InflationResult r = inflate_sizes(inst, 2);
  CHECK(r.level == Rational(5, 2));
  CHECK(r.raised_count == 2);
  CHECK(r.inflated == std::vector<Rational>{Rational(10), Rational(5, 2), Rational(5, 2)});
  Rational new_total = Rational(10) + Rational(5, 2) + Rational(5, 2);
  CHECK(new_total == Rational(15));
  // spread equals the new average box size and still fits the capacity
  CHECK(Rational(10) - r.level == new_total / Rational(2));
  CHECK(new_total / Rational(2) <= inst.capacity);
}

TEST_CASE("inflate_sizes precondition gates") {
  Instance inst = validate_instance({100, 95}, Rational(10));
  CHECK_THROWS_WITH_AS(inflate_sizes(inst, 20), doctest::Contains("PreconditionViolated"), Error);
  inst = validate_instance({50, 1}, Rational(10));
  CHECK_THROWS_WITH_AS(inflate_sizes(inst, 2), doctest::Contains("PreconditionViolated"), Error);
}

TEST_CASE("solve_bmbp worked example: all loads exactly the average") {
  Instance inst = validate_instance({8, 7, 6, 5, 4}, Rational(10));
  TwoStagePlan plan = solve_bmbp(inst);
  CHECK(plan.bins == 3);
  CHECK(plan.tilde_c == Rational(10));
  CHECK(plan.sigma == std::vector<int>{2, 1, 3});
  for (const auto& load : plan.bin_loads) CHECK(load == Rational(10));
  CHECK(check_bmbp(inst, plan).ok);
}

TEST_CASE("solve_bmbp deflates the (10,1,1) instance as expected") {
  Instance inst = validate_instance({10, 1, 1}, Rational(10));
  TwoStagePlan plan = solve_bmbp(inst);
  CHECK(plan.bins == 2);
  // object 1 split 3/4 into bin 1 (stage 1) and 1/4 into bin 2 (stage 2);
  // the unit objects go whole into bin 2 at stage 1
  std::map<std::tuple<int, int, int>, Rational> got;
  for (const auto& a : plan.assignments) got[{a.object, a.bin, a.stage}] = a.fraction;
  CHECK(got.size() == 4);
  CHECK(got.at({1, 1, 1}) == Rational(3, 4));
  CHECK(got.at({1, 2, 2}) == Rational(1, 4));
  CHECK(got.at({2, 2, 1}) == Rational(1));
  CHECK(got.at({3, 2, 1}) == Rational(1));
  CHECK(plan.bin_loads == std::vector<Rational>{Rational(15, 2), Rational(9, 2)});
  CHECK(check_bmbp(inst, plan).ok);
}

TEST_CASE("solve_bmbp singleton") {
  Instance inst = validate_instance({5}, Rational(5));
  TwoStagePlan plan = solve_bmbp(inst);
  CHECK(plan.bins == 1);
  CHECK(plan.lambda1 == std::vector<Rational>{Rational(1)});
  CHECK(plan.assignments.size() == 1);
  CHECK(plan.bin_loads == std::vector<Rational>{Rational(5)});
}

TEST_CASE("random instances: exactness, bounds, and split limits") {
  SplitMix64 rng(0x5eed0004);
  for (int t = 0; t < 500; ++t) {
    auto gen = random_balanced_instance(rng, 40);
    Instance inst = validate_instance(gen.sizes, Rational(gen.cap_num, gen.cap_den));
    int m = static_cast<int>(lower_bound_bins(inst));
    REQUIRE(m <= inst.n());

    InflationResult infl = inflate_sizes(inst, m);
    TwoStagePlan plan = solve_bmbp(inst);
    CHECK(check_bmbp(inst, plan).ok);

    Rational tilde = plan.tilde_c;
    // lambda bounds from the induction
    for (int bin = 0; bin < m; ++bin) {
      CHECK(plan.lambda1[bin] >= Rational(0));
      CHECK(plan.lambda2[bin] >= Rational(0));
      CHECK(plan.lambda2[bin] <= Rational(1));
      CHECK(plan.lambda1[bin] <= Rational(1));
    }
    // every object split across at most 2 bins, at most one bin per stage,
    // fractions summing to one
    std::map<int, Rational> demand;
    std::map<int, std::set<int>> bins_of;
    std::map<std::pair<int, int>, int> per_stage;
    for (const auto& a : plan.assignments) {
      demand[a.object] += a.fraction;
      bins_of[a.object].insert(a.bin);
      ++per_stage[{a.object, a.stage}];
      CHECK(a.fraction.sign() > 0);
    }
    for (int i = 1; i <= inst.n(); ++i) CHECK(demand[i] == Rational(1));
    for (auto& [obj, bins] : bins_of) CHECK(bins.size() <= 2);
    for (auto& [key, cnt] : per_stage) CHECK(cnt == 1);
    // loads never exceed the capacity; equal to the average when no inflation
    for (const auto& load : plan.bin_loads) {
      CHECK(load <= inst.capacity);
      if (infl.raised_count == 0) CHECK(load == tilde);
    }
    // balance within each (bin, stage)
    std::map<std::pair<int, int>, Rational> alpha;
    for (const auto& a : plan.assignments) {
      auto [it, fresh] = alpha.emplace(std::make_pair(a.bin, a.stage), a.fraction);
      if (!fresh) CHECK(it->second == a.fraction);
    }
  }
}

TEST_CASE("box spread stays within the average after phase one") {
  SplitMix64 rng(0x5eed0005);
  for (int t = 0; t < 500; ++t) {
    auto gen = random_balanced_instance(rng, 40);
    Instance inst = validate_instance(gen.sizes, Rational(gen.cap_num, gen.cap_den));
    int m = static_cast<int>(lower_bound_bins(inst));
    InflationResult infl = inflate_sizes(inst, m);
    Rational total(0);
    for (const auto& r : infl.inflated) total += r;
    Rational tilde = total / Rational(m);
    // the hypothesis the inflation establishes
    REQUIRE(infl.inflated.front() - infl.inflated.back() <= tilde);

    Packing p;
    if (infl.raised_count == 0) {
      p = pack_phase1(inst, m);
    } else {
      // pack the inflated sizes through the public interface by scaling
      std::int64_t q = infl.level.den_ll();
      std::vector<std::int64_t> scaled;
      for (const auto& r : infl.inflated) scaled.push_back(r.num_ll() * (q / r.den_ll()));
      Instance scaled_inst = validate_instance(scaled, inst.capacity * Rational(q));
      p = pack_phase1(scaled_inst, m);
      for (auto& c : p.box_sizes) c /= Rational(q);
      tilde = total / Rational(m);
    }
    Rational cmax = p.box_sizes[0], cmin = p.box_sizes[0];
    for (const auto& c : p.box_sizes) {
      cmax = std::max(cmax, c);
      cmin = std::min(cmin, c);
    }
    CHECK(cmax - cmin <= tilde);
  }
}

TEST_CASE("solve_bmbp rejects instances outside the hypothesis") {
  CHECK_THROWS_WITH_AS(solve_bmbp(validate_instance({100, 95}, Rational(10))),
                       doctest::Contains("PreconditionViolated"), Error);
  CHECK_THROWS_WITH_AS(solve_bmbp(validate_instance({50, 1}, Rational(20))),
                       doctest::Contains("PreconditionViolated"), Error);
}
