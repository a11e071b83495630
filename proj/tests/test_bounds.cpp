#include <cmath>

#include "bdim/bounds.hpp"
#include "bdim/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bdim;

namespace {

using u128 = unsigned __int128;

// Saturating power, enough for the small cases below.
u128 ipow(u128 base, unsigned exp) {
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > (~u128{0}) / (base ? base : 1)) return ~u128{0};
    r *= base;
  }
  return r;
}

std::uint64_t brute_integer_bound(unsigned n, unsigned m) {
  const u128 size = ipow(m, n), cap = n * (m - 1) + 1;
  std::uint64_t d = 0;
  while (ipow(cap, static_cast<unsigned>(d)) < size) ++d;
  return d;
}

}  // namespace

TEST_CASE("capacity test") {
  CHECK(capacity_ok(64, 6, 5));
  CHECK_FALSE(capacity_ok(9, 1, 3));
  CHECK(capacity_ok(8, 1, 3));
}

TEST_CASE("hand values of the counting bound") {
  auto b = mn_lower_bound(3, 2);
  CHECK(b.raw_value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(b.integer_bound == 2);
  b = mn_lower_bound(2, 3);
  CHECK(b.raw_value == doctest::Approx(2 * std::log(3.0) / std::log(5.0)).epsilon(1e-12));
  CHECK(b.integer_bound == 2);
  CHECK(lat_lower_bound(6).integer_bound == 3);
  CHECK(lat_lower_bound(6).raw_value == doctest::Approx(2.137243).epsilon(1e-6));
  CHECK(lat_lower_bound(13).integer_bound == 4);
  CHECK(lat_lower_bound(6).formula == "lat");
  CHECK(mn_lower_bound(2, 3).formula == "mn");
  CHECK(mn_lower_bound(4, 1).integer_bound == 0);
}

TEST_CASE("exact integer bound agrees with brute force and with floating point") {
  for (unsigned n = 1; n <= 20; ++n) {
    for (unsigned m = 2; m <= 20; ++m) {
      const auto b = mn_lower_bound(n, m);
      CHECK(b.integer_bound == brute_integer_bound(n, m));
      const double raw = n * std::log(double(m)) / std::log(double(n * (m - 1) + 1));
      CHECK(b.raw_value == doctest::Approx(raw).epsilon(1e-12));
      // ceil of the raw value, unless the float sits within rounding of an integer.
      if (std::abs(raw - std::round(raw)) > 1e-9) CHECK(b.integer_bound == std::uint64_t(std::ceil(raw)));
    }
  }
}

TEST_CASE("raw bound is monotone in m and stays below n") {
  for (unsigned n = 2; n <= 12; ++n) {
    double prev = 0;
    for (unsigned m = 2; m <= 60; ++m) {
      const double raw = mn_lower_bound(n, m).raw_value;
      CHECK(raw >= prev);
      CHECK(raw < n);
      prev = raw;
    }
  }
  // With a single coordinate the bound is exactly 1 for every m.
  CHECK(mn_lower_bound(1, 7).raw_value == doctest::Approx(1.0));
}

TEST_CASE("minimal multiplicity") {
  CHECK(min_multiplicity_for_target(3, 3) == 8);
  CHECK(min_multiplicity_for_target(2, 2) == 2);
  CHECK_FALSE(mn_bound_exceeds(3, 7, 3));
  CHECK(mn_bound_exceeds(3, 8, 3));
  for (unsigned n = 2; n <= 6; ++n) {
    std::uint64_t big = 1;
    for (unsigned i = 1; i < n; ++i) big *= n;
    CHECK(mn_bound_exceeds(n, big, n));
    const auto m = min_multiplicity_for_target(n, n);
    CHECK(m <= big);
    CHECK(mn_bound_exceeds(n, m, n));
    CHECK_FALSE(mn_bound_exceeds(n, m - 1, n));
  }
  // Linear scan oracle for the small targets.
  for (unsigned n = 2; n <= 5; ++n) {
    for (unsigned t = 2; t <= n; ++t) {
      std::uint64_t m = 2;
      while (ipow(m, n) <= ipow(n * (m - 1) + 1, t - 1)) ++m;
      CHECK(min_multiplicity_for_target(n, t) == m);
    }
  }
  CHECK_THROWS_AS(min_multiplicity_for_target(3, 4), Error);
  CHECK_THROWS_AS(min_multiplicity_for_target(3, 1), Error);
}

TEST_CASE("distinguishing sets") {
  const auto g = multiset_grid(3, 3);
  const auto s = singletons_of_grid(3, 3);
  CHECK(s.size() == 6);
  CHECK(is_distinguishing(g, s).distinguishing);
  for (unsigned n = 1; n <= 6; ++n) CHECK(is_distinguishing(boolean_lattice(n), singletons_of_grid(n, 2)).distinguishing);

  const DistinguishingSet bottom{{0}};
  const auto check = is_distinguishing(chain(5), bottom);
  CHECK_FALSE(check.distinguishing);
  REQUIRE(check.failing_pair.has_value());
  CHECK(*check.failing_pair == std::pair<std::size_t, std::size_t>{1, 2});
  CHECK_THROWS_AS(distinguishing_lower_bound(chain(5), bottom), Error);

  const auto b = distinguishing_lower_bound(boolean_lattice(6), singletons_of_grid(6, 2));
  CHECK(b.integer_bound == 3);
  CHECK(b.formula == "distinguishing");
}

TEST_CASE("signatures of the B6 table are injective") {
  const auto r = b6_realizer();
  const auto sigs = signature_map(r.orders(), singletons_of_grid(6, 2));
  CHECK(sigs.size() == 64);
  CHECK_FALSE(find_signature_collision(sigs).has_value());
  // Recompute one signature by hand.
  const auto& order = r.order(2);
  std::uint32_t below = 0;
  for (std::uint32_t s : {1U, 2U, 4U, 8U, 16U, 32U}) below += order.rank(s) < order.rank(45);
  CHECK(sigs[45][2] == below);
  CHECK(signature_map(r.orders(), singletons_of_grid(6, 2), 4) == sigs);
}

TEST_CASE("one order cannot separate B2") {
  const std::vector<LinearOrder> one{LinearOrder::identity(4)};
  const auto sigs = signature_map(one, singletons_of_grid(2, 2));
  CHECK(find_signature_collision(sigs).has_value());
}

TEST_CASE("signatures of any verified realizer over a distinguishing set are injective") {
  for (unsigned n = 2; n <= 8; ++n) {
    const auto r = upper_bound_realizer(n);
    CHECK_FALSE(find_signature_collision(signature_map(r.orders(), singletons_of_grid(n, 2))).has_value());
  }
  const auto r = canonical_grid_realizer(3, 4);
  CHECK_FALSE(find_signature_collision(signature_map(r.orders(), singletons_of_grid(3, 4))).has_value());
}
