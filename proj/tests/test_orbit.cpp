#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "recdim/grid_index.hpp"
#include "recdim/orbit.hpp"
#include "recdim/rng.hpp"

using namespace recdim;

namespace {
SystemSpec golden() { return make_rotation(cf_value(ContinuedFraction::golden(), 190), "golden"); }
}

TEST_CASE("orbit convention: points[0] is the (burned-in) start") {
  auto sys = golden();
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle{0}), 0, 6);
  CHECK(orb.x_raw(0) == 0);
  for (std::uint64_t k = 1; k < 6; ++k)
    CHECK(orb.x_raw(k) == mul_mod1(sys.angle, k).raw);
  CHECK(orb.point(1).x() == doctest::Approx(0.61803398874989).epsilon(1e-12));
}

TEST_CASE("doubling: period-2 orbit of 1/3") {
  auto sys = make_doubling();
  // as a double: the 53-bit truncation of 1/3 drifts by 3*eps per period
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle::from_double(1.0 / 3.0)), 0, 3);
  CHECK(raw_to_double(orb.x_raw(0)) == doctest::Approx(1.0 / 3.0));
  CHECK(raw_to_double(orb.x_raw(1)) == doctest::Approx(2.0 / 3.0));
  CHECK(raw_to_double(circle_dist_raw(orb.x_raw(2), orb.x_raw(0))) < 1e-15);
  // at full stored precision the period-2 return is exact to the last bit
  auto exact = generate_orbit(sys, Point::circle(FixedPointAngle::from_ratio(1, 3)), 0, 3);
  CHECK(circle_dist_raw(exact.x_raw(2), exact.x_raw(0)) <= 4);
}

TEST_CASE("constant map orbit: start, y0, y0, ...") {
  auto sys = noninvariant_counterexample();
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle::from_double(0.9)), 0, 3);
  CHECK(raw_to_double(orb.x_raw(0)) == doctest::Approx(0.9));
  CHECK(orb.x_raw(1) == FixedPointAngle::from_double(0.25).raw);
  CHECK(orb.x_raw(2) == orb.x_raw(1));
}

TEST_CASE("seeded orbits are bit-identical across regenerations") {
  for (auto sys : {golden(), make_doubling(), make_cat_map(), make_cantor_shift(), make_logistic()}) {
    std::uint64_t burn = sys.kind == SystemKind::Logistic ? 500 : 0;
    auto a = generate_orbit_seeded(sys, 77, burn, 5000);
    auto b = generate_orbit_seeded(sys, 77, burn, 5000);
    CHECK(a.coords == b.coords);
    auto c = generate_orbit_seeded(sys, 78, burn, 5000);
    CHECK(a.coords != c.coords);
  }
}

TEST_CASE("seeded doubling orbit is consistent with the map at stored precision") {
  auto sys = make_doubling();
  auto orb = generate_orbit_seeded(sys, 13, 0, 3000);
  for (std::size_t i = 0; i + 1 < 3000; ++i) {
    u128 stepped = orb.x_raw(i) << 1;  // fresh zero enters the bottom bit
    CHECK(circle_dist_raw(stepped, orb.x_raw(i + 1)) <= 1);
  }
}

TEST_CASE("seeded cantor orbit: digit-shift consistency at stored precision") {
  auto sys = make_cantor_shift();
  auto orb = generate_orbit_seeded(sys, 14, 0, 500);
  for (std::size_t i = 0; i + 1 < 500; ++i) {
    // 3x mod 1 of the stored value drops the leading digit; the refreshed
    // trailing digit enters at weight 3^-60
    double three_x = 3.0 * raw_to_double(orb.x_raw(i));
    three_x -= std::floor(three_x);
    CHECK(std::abs(three_x - raw_to_double(orb.x_raw(i + 1))) < 1e-15);
  }
}

TEST_CASE("streaming visitor and stored buffer agree") {
  for (auto sys : {golden(), make_doubling(), make_cat_map(), make_cantor_shift()}) {
    auto orb = generate_orbit_seeded(sys, 21, 0, 2000);
    std::size_t i_seen = 0;
    bool same = true;
    visit_orbit_seeded(sys, 21, 0, 2000, [&](std::uint64_t i, u128 x, u128 y) {
      same = same && orb.x_raw(i) == x;
      if (sys.dim == 2) same = same && orb.y_raw(i) == y;
      ++i_seen;
    });
    CHECK(same);
    CHECK(i_seen == 2000);
  }
}

TEST_CASE("stored-start shift orbits are precision-limited") {
  CHECK_THROWS_AS(
      generate_orbit(make_doubling(), Point::circle(FixedPointAngle::from_double(0.3)), 0, 500),
      std::invalid_argument);
}

TEST_CASE("double-arithmetic orbits respect the declared safe length") {
  auto sys = make_logistic();
  CHECK_THROWS_AS(generate_orbit_seeded(sys, 1, 0, sys.double_safe_len + 1),
                  std::invalid_argument);
}

TEST_CASE("orbit memory guard rejects before allocating") {
  CHECK_THROWS_AS(generate_orbit_seeded(make_cat_map(), 1, 0, 150'000'000),
                  std::length_error);
}

TEST_CASE("prefixed doubling orbit honors the stored start bits") {
  auto sys = make_doubling();
  Point start = Point::circle(FixedPointAngle::from_double(0.3));
  auto orb = generate_orbit_prefixed(sys, start, 9, 0, 1000);
  CHECK(orb.x_raw(0) == start.c[0].raw);
  for (std::size_t i = 0; i + 1 < 200; ++i)
    CHECK(circle_dist_raw(orb.x_raw(i) << 1, orb.x_raw(i + 1)) <= 1);
  // different seeds only diverge once the stored prefix has shifted out
  auto orb2 = generate_orbit_prefixed(sys, start, 10, 0, 1000);
  CHECK(circle_dist_raw(orb.x_raw(20), orb2.x_raw(20)) < dyadic_raw(100));
  CHECK(orb.x_raw(500) != orb2.x_raw(500));
}

TEST_CASE("orbit cache: round trip and header mismatch") {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 4, 0, 1000);
  std::string path = "orbit_cache_test.bin";
  write_orbit_cache(orb, path);
  auto back = read_orbit_cache(path, sys);
  CHECK(back.coords == orb.coords);
  CHECK(back.n == orb.n);
  CHECK_THROWS_AS(read_orbit_cache(path, make_doubling()), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("grid index partitions the buffer") {
  auto sys = golden();
  auto cloud = sample_cloud(sys, 5000, 3);
  auto idx = build_grid_index(cloud, 6);
  std::uint64_t total = 0;
  for (auto c : idx.cell_count) total += c;
  CHECK(total == cloud.n);
  CHECK(idx.items.size() == cloud.n);
  // every item index appears exactly once
  std::vector<char> seen(cloud.n, 0);
  for (auto i : idx.items) seen[i]++;
  for (auto s : seen) CHECK(s == 1);
}

TEST_CASE("grid cell cap guard") {
  auto cloud = sample_cloud(make_cat_map(), 100, 3);
  CHECK_THROWS_AS(build_grid_index(cloud, 14, 1 << 20), std::length_error);
}

TEST_CASE("equispaced points: one per cell") {
  OrbitBuffer buf;
  buf.system = golden();
  buf.kind = BufferKind::Orbit;
  buf.n = 8;
  buf.dim = 1;
  for (int i = 0; i < 8; ++i) buf.coords.push_back(static_cast<u128>(i) << 125);
  auto idx = build_grid_index(buf, 3);
  for (auto c : idx.cell_count) CHECK(c == 1);
}

TEST_CASE("occupation counts: grid equals linear scan exactly") {
  std::vector<SystemSpec> systems = {golden(), make_doubling(), make_cat_map(),
                                     make_cantor_shift(), make_logistic()};
  SplitMix64 rng(6);
  for (const auto& sys : systems) {
    auto cloud = sample_cloud(sys, 30'000, 91);
    RadiusSchedule sched(1, sys.dim == 1 ? 12 : 9);
    auto idx = build_grid_index(cloud, sys.dim == 1 ? 9 : 7);
    for (int q = 0; q < 100; ++q) {
      Point y = sample_one(sys, rng.next());
      auto a = occupation_counts(cloud, idx, y, sched);
      auto b = occupation_counts_linear(cloud, y, sched);
      CHECK(a == b);
    }
  }
}

TEST_CASE("occupation counts are nonincreasing in k and saturate at r >= 1/2") {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 9, 0, 50'000);
  auto idx = build_grid_index(orb, 10);
  RadiusSchedule sched(1, 14);
  Point y = sample_one(sys, 123);
  auto counts = occupation_counts(orb, idx, y, sched);
  CHECK(counts.front() == orb.n);  // k = 1: open ball of radius 1/2 misses at most the antipode
  for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] <= counts[i - 1]);
}

TEST_CASE("golden orbit occupation matches ball length (unique ergodicity)") {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 10, 0, 1'000'000);
  auto idx = build_grid_index(orb, 12);
  RadiusSchedule sched(6, 7);
  Point y = Point::circle(FixedPointAngle::from_double(0.5));
  auto counts = occupation_counts(orb, idx, y, sched);
  double frac6 = static_cast<double>(counts[0]) / static_cast<double>(orb.n);
  CHECK(std::abs(frac6 - 2.0 * std::ldexp(1.0, -6)) <= 1e-3);
}

TEST_CASE("cantor gap: no orbit mass within 2^-4 of 0.5") {
  auto sys = make_cantor_shift();
  auto orb = generate_orbit_seeded(sys, 11, 0, 100'000);
  auto idx = build_grid_index(orb, 10);
  RadiusSchedule sched(4, 6);
  Point y;
  y.space = Space::CantorCode;
  y.dim = 1;
  y.c[0] = FixedPointAngle::from_double(0.5);
  auto counts = occupation_counts(orb, idx, y, sched);
  for (auto c : counts) CHECK(c == 0);
}
