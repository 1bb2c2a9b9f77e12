#include <doctest.h>

#include <algorithm>

#include "balpack/instance.hpp"
#include "test_util.hpp"

using namespace balpack;

TEST_CASE("validate_instance sorts non-increasing with a stable index map") {
  Instance inst = validate_instance({8, 7, 6, 5, 4}, Rational(10));
  CHECK(inst.sizes == std::vector<std::int64_t>{8, 7, 6, 5, 4});
  inst = validate_instance({4, 8, 6, 7, 5}, Rational(10));
  CHECK(inst.sizes == std::vector<std::int64_t>{8, 7, 6, 5, 4});
  CHECK(inst.original_sizes() == std::vector<std::int64_t>{4, 8, 6, 7, 5});

  // ties keep input order
  inst = validate_instance({3, 5, 3, 5}, Rational(10));
  CHECK(inst.input_index == std::vector<std::int32_t>{1, 3, 0, 2});
}

TEST_CASE("validate_instance rejections") {
  CHECK(validate_instance({5}, Rational(5)).n() == 1);
  CHECK_THROWS_WITH_AS(validate_instance({}, Rational(1)), doctest::Contains("EmptyInstance"),
                       Error);
  CHECK_THROWS_WITH_AS(validate_instance({3, 0, 2}, Rational(10)),
                       doctest::Contains("NonPositiveSize"), Error);
  CHECK_THROWS_WITH_AS(validate_instance({3, -1}, Rational(10)),
                       doctest::Contains("NonPositiveSize"), Error);
  CHECK_THROWS_WITH_AS(validate_instance({3}, Rational(0)),
                       doctest::Contains("NonPositiveCapacity"), Error);
  CHECK_THROWS_WITH_AS(validate_instance({3}, Rational(-1, 2)),
                       doctest::Contains("NonPositiveCapacity"), Error);
}

TEST_CASE("lower_bound_bins computes ceil(S/C) exactly") {
  CHECK(lower_bound_bins(validate_instance({8, 7, 6, 5, 4}, Rational(10))) == 3);
  CHECK(lower_bound_bins(validate_instance({5}, Rational(5))) == 1);
  CHECK(lower_bound_bins(validate_instance({100, 95}, Rational(10))) == 20);
  CHECK(lower_bound_bins(validate_instance({1, 1}, Rational(3, 2))) == 2);
}

TEST_CASE("ceiling property holds exactly on random instances") {
  SplitMix64 rng(0x5eed0002);
  for (int t = 0; t < 500; ++t) {
    int n = static_cast<int>(rng.range(1, 20));
    std::vector<std::int64_t> sizes;
    for (int i = 0; i < n; ++i) sizes.push_back(rng.range(1, 50));
    Rational cap(rng.range(1, 60), rng.range(1, 4));
    Instance inst = validate_instance(sizes, cap);
    std::int64_t m = lower_bound_bins(inst);
    Rational total(inst.total());
    CHECK(Rational(m) * cap >= total);
    CHECK(Rational(m - 1) * cap < total);

    // sorting preserves the multiset
    auto orig = inst.original_sizes();
    std::sort(orig.begin(), orig.end());
    auto sorted = inst.sizes;
    std::sort(sorted.begin(), sorted.end());
    CHECK(orig == sorted);
  }
}
