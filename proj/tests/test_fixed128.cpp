#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "recdim/rng.hpp"
#include "recdim/system.hpp"

using namespace recdim;

TEST_CASE("exact binary expansion of doubles") {
  for (double v : {0.0, 0.5, 0.25, 0.1, 0.3, 0.6180339887498949, 0.9999999999999999}) {
    auto f = FixedPointAngle::from_double(v);
    CHECK(std::abs(f.to_double() - v) <= std::ldexp(1.0, -52));
  }
  // dyadic values are exact
  CHECK(FixedPointAngle::from_double(0.5).raw == dyadic_raw(1));
  CHECK(FixedPointAngle::from_double(0.25).raw == dyadic_raw(2));
}

TEST_CASE("repeated addition equals integer multiplication, bit exact") {
  auto alpha = FixedPointAngle::from_double(0.6180339887498949);
  FixedPointAngle acc{0};
  const std::uint64_t big = 100'000'000;
  for (std::uint64_t i = 0; i < big; ++i) acc += alpha;
  CHECK(acc.raw == mul_mod1(alpha, big).raw);
}

TEST_CASE("from_ratio produces exact dyadic and near-exact rationals") {
  CHECK(FixedPointAngle::from_ratio(1, 2).raw == dyadic_raw(1));
  CHECK(FixedPointAngle::from_ratio(1, 4).raw == dyadic_raw(2));
  // floor(2^128/3): 3*value is within one ulp of 1
  u128 third = FixedPointAngle::from_ratio(1, 3).raw;
  u128 three = third * 3;
  CHECK(static_cast<u128>(0) - three <= 3);
}

TEST_CASE("circle distance: wraparound, symmetry, bound") {
  auto a = FixedPointAngle::from_double(0.9);
  auto b = FixedPointAngle::from_double(0.1);
  CHECK(raw_to_double(circle_dist_raw(a.raw, b.raw)) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(circle_dist_raw(a.raw, b.raw) == circle_dist_raw(b.raw, a.raw));
  CHECK(circle_dist_raw(a.raw, a.raw) == 0);

  SplitMix64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    u128 x = rng.uniform_u128(), y = rng.uniform_u128();
    CHECK(circle_dist_raw(x, y) <= dyadic_raw(1));  // <= 1/2
  }
}

TEST_CASE("metric axioms on random triples") {
  SplitMix64 rng(11);
  auto as_circle = [](u128 v) { return Point::circle(FixedPointAngle{v}); };
  auto as_torus = [&rng](u128 v) {
    return Point::torus(FixedPointAngle{v}, FixedPointAngle{rng.uniform_u128()});
  };
  for (int i = 0; i < 10'000; ++i) {
    {
      Point a = as_circle(rng.uniform_u128());
      Point b = as_circle(rng.uniform_u128());
      Point c = as_circle(rng.uniform_u128());
      u128 ab = distance_raw(MetricTag::CircleWrap, a, b);
      u128 ba = distance_raw(MetricTag::CircleWrap, b, a);
      u128 ac = distance_raw(MetricTag::CircleWrap, a, c);
      u128 cb = distance_raw(MetricTag::CircleWrap, c, b);
      CHECK(ab == ba);
      CHECK((ab == 0) == (a.c[0].raw == b.c[0].raw));
      CHECK(ab <= ac + cb);
    }
    {
      Point a = as_torus(rng.uniform_u128());
      Point b = as_torus(rng.uniform_u128());
      Point c = as_torus(rng.uniform_u128());
      u128 ab = distance_raw(MetricTag::TorusMax, a, b);
      u128 ba = distance_raw(MetricTag::TorusMax, b, a);
      u128 ac = distance_raw(MetricTag::TorusMax, a, c);
      u128 cb = distance_raw(MetricTag::TorusMax, c, b);
      CHECK(ab == ba);
      CHECK(ab <= ac + cb);
    }
  }
}

TEST_CASE("torus max metric examples") {
  Point a = Point::torus(FixedPointAngle::from_double(0.0), FixedPointAngle::from_double(0.0));
  Point b = Point::torus(FixedPointAngle::from_double(0.4), FixedPointAngle::from_double(0.1));
  CHECK(distance(MetricTag::TorusMax, a, b) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(distance(MetricTag::TorusMax, a, a) == 0.0);
}

TEST_CASE("mismatched spaces are rejected") {
  Point a = Point::circle(FixedPointAngle::from_double(0.3));
  Point b = Point::torus(FixedPointAngle::from_double(0.3), FixedPointAngle::from_double(0.4));
  CHECK_THROWS_AS(distance_raw(MetricTag::CircleWrap, a, b), std::invalid_argument);
}
