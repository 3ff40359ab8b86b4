#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "recdim/grid_index.hpp"
#include "recdim/orbit.hpp"
#include "recdim/rng.hpp"
#include "recdim/system.hpp"

using namespace recdim;

TEST_CASE("doubling step: 0.3 -> 0.6 (exact on the stored expansion)") {
  auto sys = make_doubling();
  Point p = Point::circle(FixedPointAngle::from_double(0.3));
  Point q = step(sys, p);
  // 2 * double(0.3) is exactly the double 0.6
  CHECK(q.c[0].raw == FixedPointAngle::from_double(0.6).raw);
}

TEST_CASE("cat map step: (0.5, 0.5) -> (0.5, 0.0)") {
  auto sys = make_cat_map();
  Point p = Point::torus(FixedPointAngle::from_double(0.5), FixedPointAngle::from_double(0.5));
  Point q = step(sys, p);
  CHECK(q.c[0].raw == FixedPointAngle::from_double(0.5).raw);
  CHECK(q.c[1].raw == 0);
}

TEST_CASE("rotation step from 0 gives the angle, bit exact") {
  auto angle = cf_value(ContinuedFraction::golden(), 190);
  auto sys = make_rotation(angle, "golden");
  Point p = Point::circle(FixedPointAngle{0});
  CHECK(step(sys, p).c[0].raw == angle.raw);
}

TEST_CASE("constant map sends everything to y0 = 1/4") {
  auto sys = noninvariant_counterexample();
  CHECK_FALSE(sys.measure_invariant);
  Point p = Point::circle(FixedPointAngle::from_double(0.77));
  Point q = step(sys, p);
  CHECK(q.c[0].raw == FixedPointAngle::from_double(0.25).raw);
  CHECK(step(sys, q).c[0].raw == q.c[0].raw);
}

TEST_CASE("circle distance example: d(0.9, 0.1) = 0.2") {
  Point a = Point::circle(FixedPointAngle::from_double(0.9));
  Point b = Point::circle(FixedPointAngle::from_double(0.1));
  CHECK(distance(MetricTag::CircleWrap, a, b) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("domain mismatch is an error") {
  auto sys = make_doubling();
  Point p = Point::torus(FixedPointAngle::from_double(0.1), FixedPointAngle::from_double(0.2));
  CHECK_THROWS_AS(step(sys, p), std::invalid_argument);
}

TEST_CASE("lebesgue sampling: reproducible, mean near 1/2") {
  auto sys = make_doubling();
  auto a = sample_measure(sys, 10'000, 99);
  auto b = sample_measure(sys, 10'000, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].c[0].raw == b[i].c[0].raw);
  double mean = 0;
  for (const auto& p : a) mean += p.x();
  mean /= static_cast<double>(a.size());
  CHECK(std::abs(mean - 0.5) <= 0.02);  // 4 sigma = 0.0115 at n = 1e4
}

TEST_CASE("cantor sampling: digits in {0,2}, value consistent with digits") {
  auto sys = make_cantor_shift();
  auto pts = sample_measure(sys, 200, 5);
  for (const auto& p : pts) {
    REQUIRE(static_cast<int>(p.digits.size()) == kCantorDepth);
    double v = 0, w = 1.0 / 3.0;
    for (auto d : p.digits) {
      CHECK((d == 0 || d == 2));
      v += d * w;
      w /= 3.0;
    }
    CHECK(p.x() == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("arcsine sampling matches the logistic invariant density") {
  auto sys = make_logistic();
  auto pts = sample_measure(sys, 40'000, 12);
  // CDF of the arcsine law at 1/2 is 1/2; at 1/4 it is 1/3
  std::size_t below_half = 0, below_quarter = 0;
  for (const auto& p : pts) {
    below_half += p.x() < 0.5;
    below_quarter += p.x() < 0.25;
  }
  CHECK(std::abs(below_half / 40000.0 - 0.5) < 0.01);
  CHECK(std::abs(below_quarter / 40000.0 - 1.0 / 3.0) < 0.01);
}

TEST_CASE("rotation orbit: iterated steps equal n*alpha mod 1 exactly") {
  auto angle = cf_value(ContinuedFraction::golden(), 190);
  auto sys = make_rotation(angle, "golden");
  Point p = Point::circle(FixedPointAngle::from_double(0.125));
  Point q = p;
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    q = step(sys, q);
    if (n % 1000 == 0 || n < 8)
      CHECK(q.c[0].raw == (p.c[0] + mul_mod1(angle, n)).raw);
  }
}

namespace {

/// Empirical pushforward check: ball-occupation fractions before and after
/// one step agree within 3 standard errors of the binomial difference.
/// With 25 probes per system one 3-sigma excursion is routine, so a single
/// mild outlier is tolerated; anything past 5 sigma fails outright.
bool pushforward_invariant(const SystemSpec& sys, std::uint64_t seed) {
  const std::size_t n = 100'000;
  auto pts = sample_measure(sys, n, seed);
  std::vector<Point> pushed;
  pushed.reserve(n);
  for (const auto& p : pts) pushed.push_back(step(sys, p));

  int mild = 0, severe = 0;
  for (int m = 4; m <= 8; ++m) {
    double r = std::ldexp(1.0, -m);
    for (int j = 0; j < 5; ++j) {
      Point y = sample_one(sys, substream_seed(seed, "centers", static_cast<std::uint64_t>(m * 8 + j)));
      std::size_t before = 0, after = 0;
      for (std::size_t i = 0; i < n; ++i) {
        before += distance(sys.metric, pts[i], y) < r;
        after += distance(sys.metric, pushed[i], y) < r;
      }
      double p_hat = static_cast<double>(before) / n;
      double se_diff = std::sqrt(2.0 * std::max(p_hat * (1 - p_hat), 1e-9) / n) * n;
      double dev = std::abs(static_cast<double>(after) - static_cast<double>(before));
      if (dev > 5.0 * se_diff + 3.0) ++severe;
      else if (dev > 3.0 * se_diff + 3.0) ++mild;
    }
  }
  return severe == 0 && mild <= 1;
}

}  // namespace

TEST_CASE("one-step pushforward preserves ball occupation for invariant systems") {
  CHECK(pushforward_invariant(make_rotation(cf_value(ContinuedFraction::golden(), 190), "golden"), 31));
  CHECK(pushforward_invariant(make_doubling(), 32));
  CHECK(pushforward_invariant(make_cat_map(), 33));
  CHECK(pushforward_invariant(make_cantor_shift(), 34));
  CHECK(pushforward_invariant(make_logistic(), 35));
}

TEST_CASE("the constant map visibly fails the pushforward check") {
  CHECK_FALSE(pushforward_invariant(noninvariant_counterexample(), 36));
}

TEST_CASE("cantor points in the central gap have no mass nearby") {
  // distance from 0.5 to the middle-thirds set is 1/6 > 2^-4
  auto sys = make_cantor_shift();
  auto pts = sample_measure(sys, 2000, 44);
  Point mid;
  mid.space = Space::CantorCode;
  mid.dim = 1;
  mid.c[0] = FixedPointAngle::from_double(0.5);
  for (const auto& p : pts)
    CHECK(distance(MetricTag::EuclideanInterval, p, mid) > std::ldexp(1.0, -4));
}
