#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "recdim/continued_fraction.hpp"
#include "recdim/fixed128.hpp"

namespace recdim {

enum class Space : std::uint8_t { Circle, Torus2, Interval, CantorCode };
enum class MetricTag : std::uint8_t { CircleWrap, TorusMax, EuclideanInterval };
enum class MeasureTag : std::uint8_t { Lebesgue, Cantor, Arcsine };
enum class ArithTag : std::uint8_t { FixedPoint, Double };

enum class SystemKind : std::uint8_t {
  Rotation,
  Doubling,
  Logistic,
  CatMap,
  CantorShift,
  ConstantMap,
};

inline constexpr int kCantorDepth = 60;  // base-3 digits stored per point

/// A point of the state space.  Coordinates are 128-bit fixed-point
/// fractions; Interval points hold the exact binary expansion of a double.
/// CantorCode points additionally carry their base-3 digits (values 0 or 2).
struct Point {
  Space space = Space::Circle;
  int dim = 1;
  FixedPointAngle c[2] = {};
  std::vector<std::uint8_t> digits;  // CantorCode only

  static Point circle(FixedPointAngle a) { return Point{Space::Circle, 1, {a, {}}, {}}; }
  static Point torus(FixedPointAngle x, FixedPointAngle y) {
    return Point{Space::Torus2, 2, {x, y}, {}};
  }
  static Point interval(double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("interval point outside [0,1]");
    if (x == 1.0) x = std::nextafter(1.0, 0.0);
    return Point{Space::Interval, 1, {FixedPointAngle::from_double(x), {}}, {}};
  }
  static Point cantor(std::vector<std::uint8_t> digits);

  double x() const { return c[0].to_double(); }
  double y() const { return c[1].to_double(); }
  std::string str() const;
};

/// Exact distance (raw 128-bit fraction).  Throws on mismatched spaces.
u128 distance_raw(MetricTag m, const Point& a, const Point& b);
double distance(MetricTag m, const Point& a, const Point& b);

/// Map + metric + domain + reference measure.  Immutable after construction.
struct SystemSpec {
  SystemKind kind = SystemKind::Rotation;
  Space space = Space::Circle;
  int dim = 1;
  MetricTag metric = MetricTag::CircleWrap;
  MeasureTag measure = MeasureTag::Lebesgue;
  ArithTag arith = ArithTag::FixedPoint;
  bool measure_invariant = true;
  FixedPointAngle angle{};          // Rotation
  FixedPointAngle const_target{};   // ConstantMap image point
  std::uint64_t double_safe_len = 10'000'000;  // Double-arithmetic orbit cap
  std::uint64_t default_burn_in = 0;
  std::string name;

  std::uint64_t hash() const;
};

SystemSpec make_rotation(FixedPointAngle angle, const std::string& label);
SystemSpec make_rotation(const ContinuedFraction& cf, int depth);
SystemSpec make_doubling();
SystemSpec make_logistic();
SystemSpec make_cat_map();
SystemSpec make_cantor_shift();

/// The constant map T(x) = y0 (y0 = 1/4) paired with Lebesgue measure, which
/// is not invariant for it; the report layer treats it as the documented
/// case where the lower recurrence inequality fails at y0.
SystemSpec noninvariant_counterexample();

/// One application of the map.  Deterministic and pure; exact for
/// fixed-point systems.  Doubling and CantorShift act on the stored
/// precision of the point (a fresh zero enters at the bottom bit/digit).
Point step(const SystemSpec& sys, const Point& p);

/// n independent draws from the declared reference measure, reproducible
/// from the seed.
std::vector<Point> sample_measure(const SystemSpec& sys, std::size_t n, std::uint64_t seed);

/// Single draw used for orbit starts; consumes the same generator stream as
/// sample_measure.
Point sample_one(const SystemSpec& sys, std::uint64_t seed);

const char* to_string(SystemKind k);
const char* to_string(MeasureTag m);

}  // namespace recdim
