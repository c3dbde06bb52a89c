#include <doctest.h>

#include <random>

#include "ekpdim/error.hpp"
#include "ekpdim/orbits.hpp"

using namespace ekpdim;

TEST_CASE("orbit window of (30,31)") {
  const auto w = orbit_window(3, {30, 31}, 3, 3);
  const std::vector<DimVector> expected{{2814, 7367}, {411, 1075}, {63, 158}, {30, 31},
                                        {147, 59},    {999, 382},  {6846, 2615}};
  CHECK(w == expected);
  CHECK(orbit_window(3, {30, 31}, 0, 0) == std::vector<DimVector>{{30, 31}});
  CHECK_THROWS_AS(orbit_window(3, {1, 3}, 1, 1), PreconditionError);
}

TEST_CASE("delta and m for the worked example") {
  const auto b = find_delta_and_m(3, {30, 31});
  CHECK(b.delta == DimVector{999, 382});
  CHECK(b.m == 5);
  const auto again = find_delta_and_m(3, {999, 382});
  CHECK(again.delta == b.delta);
  CHECK(again.m == b.m);
  const auto far = find_delta_and_m(3, {2814, 7367});
  CHECK(far.delta == b.delta);
  CHECK(w_bound(3, {30, 31}, 1) == 5);
  CHECK(w_bound(3, {30, 31}, 2) == 4);
  CHECK(w_bound(3, {30, 31}, 6) == 0);
  CHECK(w_bound(3, {30, 31}, 9) == -3);
  CHECK_THROWS_AS(w_bound(3, {30, 31}, 0), PreconditionError);
}

TEST_CASE("orbit of (1,1) for r = 3") {
  const auto b = find_delta_and_m(3, {1, 1});
  CHECK(b.delta == DimVector{1, 1});
  CHECK(b.m == 1);
}

TEST_CASE("preconditions and the step cap") {
  CHECK_THROWS_AS(find_delta_and_m(2, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(find_delta_and_m(3, {1, 3}), PreconditionError);
  CHECK_THROWS_AS(find_delta_and_m(3, {30, 31}, 2), CapExceeded);
}

TEST_CASE("boundary flags are monotone and match delta and m") {
  std::mt19937_64 rng(5);
  int seeds = 0;
  while (seeds < 60) {
    const long r = 3 + static_cast<long>(rng() % 4);
    const DimVector seed{static_cast<long>(rng() % 400) + 1, static_cast<long>(rng() % 400) + 1};
    if (classify(r, seed) != RootClass::Imaginary) continue;
    ++seeds;
    const auto b = find_delta_and_m(r, seed);
    const auto report = orbit_report(r, b.delta, 50, 50);
    const BigInt q = q_r(r, seed);
    for (const auto& e : report.window) {
      CHECK(q_r(r, e.dim) == q);
      CHECK(e.eip == (e.offset >= 1));
      CHECK(e.ekp == (e.offset <= -static_cast<long>(b.m)));
    }
  }
}

TEST_CASE("delta agrees with the normalized-base construction") {
  // Walk Phi^{-1} to the first orbit element with a <= b, then Phi forward:
  // delta is the last element before the first EIP element.
  for (long r = 3; r <= 5; ++r)
    for (long a = 1; a <= 60; ++a)
      for (long b = 1; b <= 60; ++b) {
        const DimVector d{a, b};
        if (classify(r, d) != RootClass::Imaginary) continue;
        DimVector cur = d;
        while (cur.d1 > cur.d2) cur = coxeter_inv(r, cur);
        while (!eip_dim(r, coxeter(r, cur))) cur = coxeter(r, cur);
        CHECK(find_delta_and_m(r, d).delta == cur);
      }
}

TEST_CASE("A sequence") {
  CHECK(a_seq(3, 5) == std::vector<BigInt>{1, 3, 8, 21, 55});
  for (long r = 3; r <= 9; ++r) {
    const auto a = a_seq(r, 30);
    CHECK(a[0] == 1);
    CHECK(a[1] == r);
    CHECK(a[2] == r * r - 1);
    for (std::size_t i = 2; i < a.size(); ++i) CHECK(a[i] == r * a[i - 1] - a[i - 2]);
  }
  CHECK_THROWS_AS(a_seq(3, 0), PreconditionError);
}

TEST_CASE("A sequence identities in Q(sqrt(D))") {
  for (long r = 3; r <= 6; ++r)
    for (unsigned l = 1; l <= 30; ++l) {
      CHECK(verify_a_identity(r, l));
      CHECK(verify_a_bound(r, l));
    }
  CHECK_THROWS_AS(verify_a_identity(3, 0), PreconditionError);
  CHECK_THROWS_AS(verify_a_bound(3, 0), PreconditionError);
}

TEST_CASE("sum identity") {
  CHECK(coxeter_inv(3, {1, 2}) == DimVector{5, 13});
  CHECK(verify_sum_identity(3, {1, 2}, 1));
  for (unsigned l = 1; l <= 10; ++l) CHECK(verify_sum_identity(3, {30, 31}, l));
  std::mt19937_64 rng(11);
  int sampled = 0;
  while (sampled < 100) {
    const long r = 3 + static_cast<long>(rng() % 4);
    const DimVector d{static_cast<long>(rng() % 1000) + 1, static_cast<long>(rng() % 1000) + 1};
    if (classify(r, d) != RootClass::Imaginary) continue;
    ++sampled;
    for (unsigned l = 1; l <= 10; ++l) CHECK(verify_sum_identity(r, d, l));
  }
  CHECK_THROWS_AS(verify_sum_identity(3, {1, 3}, 1), PreconditionError);
}

TEST_CASE("gap inequalities along the orbit") {
  CHECK(coxeter(3, {31, 30}) == DimVector{158, 63});
  CHECK(verify_orbit_gaps(3, {31, 30}));
  CHECK(verify_orbit_gaps(3, {30, 31}));
  for (long r = 3; r <= 6; ++r)
    for (long a = 1; a <= 80; ++a)
      for (long b = 1; b <= 80; ++b)
        if (classify(r, {a, b}) == RootClass::Imaginary) CHECK(verify_orbit_gaps(r, {a, b}));
  CHECK_THROWS_AS(verify_orbit_gaps(2, {1, 1}), PreconditionError);
}
