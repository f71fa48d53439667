#include "spinfed/framework.hpp"
#include "spinfed/fifo.hpp"

#include <doctest.h>

using namespace spinfed;

TEST_CASE("contention job count") {
  CHECK(contention_jobs(10, 10, 10, true) == 2);
  CHECK(contention_jobs(10, 10, 10, false) == 0);
  CHECK(contention_jobs(5, 3, 4, true) == 2);
  CHECK_THROWS_AS(contention_jobs(10, 10, 0, true), ParameterError);
}

TEST_CASE("graham bound is exact") {
  CHECK(graham_bound(10, 5, Rat(0), 3) == Rat(20, 3));
  CHECK(graham_bound(10, 5, Rat(17), 2) == Rat(16));
  CHECK(graham_bound(7, 7, Rat(0), 1) == Rat(7));
  CHECK_THROWS_AS(graham_bound(10, 5, Rat(0), 0), ParameterError);
}

TEST_CASE("graham bound non-increasing in m at fixed interference") {
  for (Time c = 1; c <= 40; c += 3)
    for (Time l = 0; l <= c; l += 5)
      for (int m = 1; m < 12; ++m)
        CHECK(graham_bound(c, l, Rat(9), m + 1) <= graham_bound(c, l, Rat(9), m));
}

TEST_CASE("per-resource maximization scans every x") {
  SUBCASE("constant curve picks x*=0") {
    auto ib = max_interference({{7, 3}}, [](int, Time) {
      return InterferencePoint{Rat(7), Rat(0)};
    });
    CHECK(ib.total == Rat(7));
    CHECK(ib.per_resource.at(0).best_x == 0);
  }

  SUBCASE("queue-discounted intra curve: 6,12,6,0 peaks at x=1") {
    auto ib = max_interference({{0, 3}}, [](int, Time x) {
      return InterferencePoint{fifo_intra(x, 3, 2, 4), Rat(0)};
    });
    CHECK(ib.total == Rat(12));
    CHECK(ib.per_resource.at(0).best_x == 1);
  }

  SUBCASE("totals add across resources") {
    auto ib = max_interference({{1, 2}, {2, 2}}, [](int r, Time x) {
      Rat v = r == 1 ? Rat(5) - x : Rat(9) - x;  // both peak at x=0
      return InterferencePoint{v, Rat(0)};
    });
    CHECK(ib.total == Rat(14));
  }
}

TEST_CASE("maximization over a superset range never decreases") {
  auto curve = [](int, Time x) {
    // non-monotone: peak in the interior
    return InterferencePoint{Rat((x % 5) * (7 - x < 0 ? 0 : 7 - x)), Rat(0)};
  };
  Rat prev{0};
  for (Time n = 0; n <= 12; ++n) {
    auto ib = max_interference({{0, n}}, curve);
    CHECK(ib.total >= prev);
    prev = ib.total;
  }
}

TEST_CASE("blocking decomposition totals") {
  BlockingDecomposition b{2, 1, 1, 2, 1, 1};
  CHECK(b.total() == 8);
  CHECK(interference_of(b, 3) == Rat(2 * 2 + 1 + 3 * 1 + 2));
}
