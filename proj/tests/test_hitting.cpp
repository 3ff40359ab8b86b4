#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "recdim/hitting.hpp"
#include "recdim/rng.hpp"

using namespace recdim;

namespace {
SystemSpec golden() { return make_rotation(cf_value(ContinuedFraction::golden(), 190), "golden"); }

std::vector<SystemSpec> all_systems() {
  return {golden(),
          make_rotation(cf_value(ContinuedFraction::silver(), 110), "silver"),
          make_doubling(),
          make_logistic(),
          make_cat_map(),
          make_cantor_shift(),
          noninvariant_counterexample()};
}
}  // namespace

TEST_CASE("target equal to the first image: tau = 1 at every scale") {
  auto sys = golden();
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle::from_double(0.2)), 0, 100);
  Point y = orb.point(1);
  auto prof = hitting_single_pass(orb, y, RadiusSchedule(2, 12));
  for (int k = 2; k <= 12; ++k) CHECK(prof.tau_at(k) == 1);
}

TEST_CASE("rational rotation 1/4: x=0, y=1/2 entered at n = 2") {
  auto sys = make_rotation(FixedPointAngle::from_ratio(1, 4), "quarter");
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle{0}), 0, 50);
  Point y = Point::circle(FixedPointAngle::from_double(0.5));
  auto prof = hitting_single_pass(orb, y, RadiusSchedule(3, 4));
  CHECK(prof.tau_at(3) == 2);
  CHECK(prof.tau_at(4) == 2);
}

TEST_CASE("rational rotation 1/3: any target off the orbit censors every fine scale") {
  auto sys = make_rotation(FixedPointAngle::from_ratio(1, 3), "third");
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle{0}), 0, 10'000);
  Point y = Point::circle(FixedPointAngle::from_double(0.1));
  auto prof = hitting_single_pass(orb, y, RadiusSchedule(5, 12));
  for (int k = 5; k <= 12; ++k) CHECK(prof.censored(k));
}

TEST_CASE("doubling from 0.3: entrance times match an independent double scan") {
  auto sys = make_doubling();
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle::from_double(0.3)), 0, 100);
  Point y = Point::circle(FixedPointAngle::from_double(0.7));
  auto prof = hitting_single_pass(orb, y, RadiusSchedule(4, 6));

  double x = 0.3;
  std::uint64_t expect4 = kCensored, expect5 = kCensored, expect6 = kCensored;
  for (std::uint64_t n = 1; n < 100; ++n) {
    x = 2.0 * x;
    if (x >= 1.0) x -= 1.0;
    double d = std::abs(x - 0.7);
    d = std::min(d, 1.0 - d);
    if (expect4 == kCensored && d < 1.0 / 16.0) expect4 = n;
    if (expect5 == kCensored && d < 1.0 / 32.0) expect5 = n;
    if (expect6 == kCensored && d < 1.0 / 64.0) expect6 = n;
  }
  CHECK(prof.tau_at(4) == expect4);
  CHECK(prof.tau_at(5) == expect5);
  CHECK(prof.tau_at(6) == expect6);
  // frozen from the scan: the stored expansion reaches 0.75 at step 52
  CHECK(expect4 == 52);
  CHECK(expect5 == kCensored);
}

TEST_CASE("a coarse ball covering the space is entered at the first candidate") {
  auto sys = make_doubling();
  auto orb = generate_orbit_seeded(sys, 3, 0, 64);
  Point y = sample_one(sys, 17);
  auto prof = hitting_single_pass(orb, y, RadiusSchedule(1, 4));
  CHECK(prof.tau_at(1) == 1);  // r = 1/2 reaches every point of the circle
}

TEST_CASE("single pass equals brute force on randomized small instances") {
  auto systems = all_systems();
  SplitMix64 rng(1234);
  for (int i = 0; i < 1000; ++i) {
    const auto& sys = systems[static_cast<std::size_t>(i) % systems.size()];
    std::uint64_t n = 64 + rng.next() % 1000;
    int k_min = 1 + static_cast<int>(rng.next() % 3);
    RadiusSchedule sched(k_min, k_min + 4 + static_cast<int>(rng.next() % 4));
    HitMode mode = (rng.next() & 3) == 0 ? HitMode::Sequence : HitMode::Dynamical;
    auto orb = generate_orbit_seeded(sys, rng.next(), 0, n);
    Point y = sample_one(sys, rng.next());
    auto a = hitting_single_pass(orb, y, sched, mode);
    auto b = hitting_bruteforce(orb, y, sched, mode);
    REQUIRE(a.tau == b.tau);
  }
}

TEST_CASE("monotonicity: tau nondecreasing in k on every computed profile") {
  auto systems = all_systems();
  SplitMix64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto& sys = systems[static_cast<std::size_t>(i) % systems.size()];
    auto orb = generate_orbit_seeded(sys, rng.next(), 0, 4000);
    Point y = sample_one(sys, rng.next());
    auto prof = hitting_single_pass(orb, y, RadiusSchedule(2, 12));
    std::uint64_t prev = 0;
    for (int k = 2; k <= 12; ++k) {
      if (prof.censored(k)) {
        // all deeper scales censored as well
        for (int kk = k; kk <= 12; ++kk) CHECK(prof.censored(kk));
        break;
      }
      CHECK(prof.tau_at(k) >= prev);
      prev = prof.tau_at(k);
    }
  }
}

TEST_CASE("censoring is sound against the min-distance record") {
  auto systems = all_systems();
  SplitMix64 rng(77);
  for (int i = 0; i < 100; ++i) {
    const auto& sys = systems[static_cast<std::size_t>(i) % systems.size()];
    auto orb = generate_orbit_seeded(sys, rng.next(), 0, 3000);
    Point y = sample_one(sys, rng.next());
    MinDistanceRecord rec;
    RadiusSchedule sched(2, 14);
    auto prof = hitting_single_pass(orb, y, sched, HitMode::Dynamical, &rec);
    REQUIRE(!rec.entries.empty());
    u128 overall_min = rec.entries.back().dist_raw;
    for (int k = 2; k <= 14; ++k) {
      if (prof.censored(k)) {
        CHECK(overall_min >= sched.threshold_raw(k));
      } else {
        // first entrance = first record with m_n below the radius
        std::uint64_t expect = kCensored;
        for (const auto& e : rec.entries) {
          if (e.dist_raw < sched.threshold_raw(k)) {
            expect = e.n;
            break;
          }
        }
        CHECK(prof.tau_at(k) == expect);
      }
    }
  }
}

TEST_CASE("batch hitting equals per-target single passes, duplicates included") {
  auto systems = all_systems();
  SplitMix64 rng(55);
  for (const auto& sys : systems) {
    auto orb = generate_orbit_seeded(sys, rng.next(), 0, 20'000);
    std::vector<Point> targets;
    for (int t = 0; t < 37; ++t) targets.push_back(sample_one(sys, rng.next()));
    targets.push_back(targets[3]);  // duplicate
    RadiusSchedule sched(2, 12);
    auto batch = batch_hitting(orb, targets, sched);
    REQUIRE(batch.size() == targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
      auto single = hitting_single_pass(orb, targets[t], sched);
      CHECK(batch[t].tau == single.tau);
    }
    CHECK(batch[3].tau == batch[targets.size() - 1].tau);
  }
}

TEST_CASE("batch hitting: single target degenerates to single pass") {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 8, 0, 10'000);
  Point y = sample_one(sys, 5);
  auto batch = batch_hitting(orb, {y}, RadiusSchedule(3, 13));
  auto single = hitting_single_pass(orb, y, RadiusSchedule(3, 13));
  CHECK(batch[0].tau == single.tau);
}

TEST_CASE("golden rotation fills every ball of radius 2^-12 within 1e6 steps") {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 40, 0, 1'000'000);
  std::vector<Point> targets;
  SplitMix64 rng(4040);
  for (int t = 0; t < 1000; ++t) targets.push_back(Point::circle(rng.uniform_angle()));
  auto profs = batch_hitting(orb, targets, RadiusSchedule(4, 12));
  for (const auto& p : profs)
    for (int k = 4; k <= 12; ++k) CHECK_FALSE(p.censored(k));
}

TEST_CASE("sequence mode admits n = 0") {
  auto sys = golden();
  auto orb = generate_orbit(sys, Point::circle(FixedPointAngle::from_double(0.77)), 0, 100);
  auto prof = hitting_single_pass(orb, orb.point(0), RadiusSchedule(2, 8), HitMode::Sequence);
  for (int k = 2; k <= 8; ++k) CHECK(prof.tau_at(k) == 0);
  auto dyn = hitting_single_pass(orb, orb.point(0), RadiusSchedule(2, 8), HitMode::Dynamical);
  for (int k = 2; k <= 8; ++k) CHECK(dyn.tau_at(k) >= 1);
}

TEST_CASE("shifted source: entrance times drop by one index") {
  auto sys = make_doubling();
  auto orb = generate_orbit_seeded(sys, 61, 0, 5000);
  Point y = sample_one(sys, 62);
  RadiusSchedule sched(2, 9);
  auto base = hitting_single_pass(orb, y, sched);
  auto shifted = hitting_single_pass(orb, y, sched, HitMode::Dynamical, nullptr, 1);
  for (int k = 2; k <= 9; ++k) {
    if (base.censored(k) || shifted.censored(k)) continue;
    if (base.tau_at(k) >= 2) CHECK(shifted.tau_at(k) == base.tau_at(k) - 1);
  }
}

TEST_CASE("closest-approach scaling on the golden rotation") {
  auto sys = golden();
  auto orb = generate_orbit_seeded(sys, 70, 0, 1'000'000);
  Point y = sample_one(sys, 71);
  MinDistanceRecord rec;
  hitting_single_pass(orb, y, RadiusSchedule(2, 30), HitMode::Dynamical, &rec);

  // alpha = 2 > 1/d: n^2 m_n grows roughly linearly; decade minima increase
  auto stat2 = closest_approach_statistic(rec, 2.0);
  auto decade_min = [&](const ApproachScaling& s, double lo, double hi) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& [n, v] : s.points)
      if (static_cast<double>(n) >= lo && static_cast<double>(n) < hi) m = std::min(m, v);
    return m;
  };
  double d3 = decade_min(stat2, 1e3, 1e4);
  double d5 = decade_min(stat2, 1e5, 1e6);
  CHECK(d5 >= 10.0 * d3);

  // alpha = 1/2 < 1/d: the statistic collapses toward 0
  auto stat_half = closest_approach_statistic(rec, 0.5);
  CHECK(stat_half.tail_min <= 1.0);

  // constant map: the target is hit exactly, so the statistic vanishes
  auto cm = noninvariant_counterexample();
  auto corb = generate_orbit_seeded(cm, 72, 0, 1000);
  MinDistanceRecord crec;
  hitting_single_pass(corb, Point::circle(cm.const_target), RadiusSchedule(2, 10),
                      HitMode::Dynamical, &crec);
  auto cstat = closest_approach_statistic(crec, 2.0);
  CHECK(cstat.tail_min == 0.0);
}

TEST_CASE("empty schedule is rejected") {
  CHECK_THROWS_AS(RadiusSchedule(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(RadiusSchedule(0, 4), std::invalid_argument);
}
