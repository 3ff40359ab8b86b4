#include "recdim/system.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "recdim/io_util.hpp"
#include "recdim/rng.hpp"

namespace recdim {

namespace {

/// floor(2^128 / 3^i) for i = 1..kCantorDepth; nested floor division keeps
/// each entry exact.
const std::array<u128, kCantorDepth + 1>& third_powers() {
  static const auto table = [] {
    std::array<u128, kCantorDepth + 1> t{};
    u128 v = ~static_cast<u128>(0);  // 2^128 - 1; floor((2^128-1)/3) == floor(2^128/3)
    for (int i = 1; i <= kCantorDepth; ++i) {
      v /= 3;
      t[static_cast<std::size_t>(i)] = v;
    }
    return t;
  }();
  return table;
}

u128 cantor_value(const std::vector<std::uint8_t>& digits) {
  u128 v = 0;
  const auto& pow = third_powers();
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] == 2) v += 2 * pow[i + 1];
  return v;
}

void check_space(const SystemSpec& sys, const Point& p) {
  if (p.space != sys.space || p.dim != sys.dim)
    throw std::invalid_argument("point does not lie in the system's domain");
}

}  // namespace

Point Point::cantor(std::vector<std::uint8_t> d) {
  if (static_cast<int>(d.size()) != kCantorDepth)
    throw std::invalid_argument("cantor point needs exactly " + std::to_string(kCantorDepth) +
                                " digits");
  for (auto v : d)
    if (v != 0 && v != 2) throw std::invalid_argument("cantor digits must be 0 or 2");
  Point p;
  p.space = Space::CantorCode;
  p.dim = 1;
  p.c[0] = FixedPointAngle{cantor_value(d)};
  p.digits = std::move(d);
  return p;
}

std::string Point::str() const {
  std::ostringstream os;
  os << format_double(x());
  if (dim == 2) os << ":" << format_double(y());
  return os.str();
}

u128 distance_raw(MetricTag m, const Point& a, const Point& b) {
  if (a.space != b.space || a.dim != b.dim)
    throw std::invalid_argument("distance between points of different spaces");
  switch (m) {
    case MetricTag::CircleWrap:
      return circle_dist_raw(a.c[0].raw, b.c[0].raw);
    case MetricTag::TorusMax: {
      u128 dx = circle_dist_raw(a.c[0].raw, b.c[0].raw);
      u128 dy = circle_dist_raw(a.c[1].raw, b.c[1].raw);
      return dx > dy ? dx : dy;
    }
    case MetricTag::EuclideanInterval:
      return interval_dist_raw(a.c[0].raw, b.c[0].raw);
  }
  throw std::logic_error("unknown metric");
}

double distance(MetricTag m, const Point& a, const Point& b) {
  return raw_to_double(distance_raw(m, a, b));
}

std::uint64_t SystemSpec::hash() const {
  std::ostringstream os;
  os << name << "|" << static_cast<int>(kind) << "|" << static_cast<int>(metric) << "|"
     << static_cast<int>(measure) << "|" << static_cast<int>(arith) << "|"
     << u128_to_string(angle.raw) << "|" << u128_to_string(const_target.raw);
  return fnv1a64(os.str());
}

SystemSpec make_rotation(FixedPointAngle angle, const std::string& label) {
  SystemSpec s;
  s.kind = SystemKind::Rotation;
  s.space = Space::Circle;
  s.dim = 1;
  s.metric = MetricTag::CircleWrap;
  s.measure = MeasureTag::Lebesgue;
  s.arith = ArithTag::FixedPoint;
  s.measure_invariant = true;
  s.angle = angle;
  s.name = "rotation(" + label + ")";
  return s;
}

SystemSpec make_rotation(const ContinuedFraction& cf, int depth) {
  return make_rotation(cf_value(cf, depth), cf.label);
}

SystemSpec make_doubling() {
  SystemSpec s;
  s.kind = SystemKind::Doubling;
  s.space = Space::Circle;
  s.dim = 1;
  s.metric = MetricTag::CircleWrap;
  s.measure = MeasureTag::Lebesgue;
  s.arith = ArithTag::FixedPoint;
  s.measure_invariant = true;
  s.name = "doubling";
  return s;
}

SystemSpec make_logistic() {
  SystemSpec s;
  s.kind = SystemKind::Logistic;
  s.space = Space::Interval;
  s.dim = 1;
  s.metric = MetricTag::EuclideanInterval;
  s.measure = MeasureTag::Arcsine;
  s.arith = ArithTag::Double;
  s.measure_invariant = true;
  s.default_burn_in = 10'000;
  s.name = "logistic4";
  return s;
}

SystemSpec make_cat_map() {
  SystemSpec s;
  s.kind = SystemKind::CatMap;
  s.space = Space::Torus2;
  s.dim = 2;
  s.metric = MetricTag::TorusMax;
  s.measure = MeasureTag::Lebesgue;
  s.arith = ArithTag::FixedPoint;
  s.measure_invariant = true;
  s.name = "cat_map";
  return s;
}

SystemSpec make_cantor_shift() {
  SystemSpec s;
  s.kind = SystemKind::CantorShift;
  s.space = Space::CantorCode;
  s.dim = 1;
  s.metric = MetricTag::EuclideanInterval;
  s.measure = MeasureTag::Cantor;
  s.arith = ArithTag::FixedPoint;
  s.measure_invariant = true;
  s.name = "cantor_shift";
  return s;
}

SystemSpec noninvariant_counterexample() {
  SystemSpec s;
  s.kind = SystemKind::ConstantMap;
  s.space = Space::Circle;
  s.dim = 1;
  s.metric = MetricTag::CircleWrap;
  s.measure = MeasureTag::Lebesgue;
  s.arith = ArithTag::FixedPoint;
  s.measure_invariant = false;
  s.const_target = FixedPointAngle::from_double(0.25);
  s.name = "constant_map";
  return s;
}

Point step(const SystemSpec& sys, const Point& p) {
  check_space(sys, p);
  switch (sys.kind) {
    case SystemKind::Rotation:
      return Point::circle(p.c[0] + sys.angle);
    case SystemKind::Doubling:
      return Point::circle(FixedPointAngle{p.c[0].raw << 1});
    case SystemKind::Logistic: {
      double x = p.x();
      double next = 4.0 * x * (1.0 - x);
      if (next < 0.0) next = 0.0;
      if (next > 1.0) next = 1.0;
      return Point::interval(next);
    }
    case SystemKind::CatMap: {
      u128 x = p.c[0].raw, y = p.c[1].raw;
      return Point::torus(FixedPointAngle{(x << 1) + y}, FixedPointAngle{x + y});
    }
    case SystemKind::CantorShift: {
      std::vector<std::uint8_t> d(p.digits.begin() + 1, p.digits.end());
      d.push_back(0);
      return Point::cantor(std::move(d));
    }
    case SystemKind::ConstantMap:
      return Point::circle(sys.const_target);
  }
  throw std::logic_error("unknown system kind");
}

Point sample_one(const SystemSpec& sys, std::uint64_t seed) {
  SplitMix64 rng(seed);
  switch (sys.measure) {
    case MeasureTag::Lebesgue:
      if (sys.dim == 2) {
        FixedPointAngle x = rng.uniform_angle();
        FixedPointAngle y = rng.uniform_angle();
        return Point::torus(x, y);
      }
      return Point::circle(rng.uniform_angle());
    case MeasureTag::Cantor: {
      std::vector<std::uint8_t> d(kCantorDepth);
      for (auto& v : d) v = (rng.next() & 1) ? 2 : 0;
      return Point::cantor(std::move(d));
    }
    case MeasureTag::Arcsine: {
      // x = sin^2(pi u / 2) pushes the uniform u to the invariant density
      // 1 / (pi sqrt(x(1-x))).
      constexpr double pi = 3.14159265358979323846;
      double u = rng.uniform01();
      double s = std::sin(0.5 * pi * u);
      return Point::interval(s * s);
    }
  }
  throw std::logic_error("unknown measure");
}

std::vector<Point> sample_measure(const SystemSpec& sys, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_measure requires n >= 1");
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_one(sys, substream_seed(seed, "measure", i)));
  return out;
}

const char* to_string(SystemKind k) {
  switch (k) {
    case SystemKind::Rotation: return "rotation";
    case SystemKind::Doubling: return "doubling";
    case SystemKind::Logistic: return "logistic";
    case SystemKind::CatMap: return "cat_map";
    case SystemKind::CantorShift: return "cantor_shift";
    case SystemKind::ConstantMap: return "constant_map";
  }
  return "unknown";
}

const char* to_string(MeasureTag m) {
  switch (m) {
    case MeasureTag::Lebesgue: return "lebesgue";
    case MeasureTag::Cantor: return "cantor";
    case MeasureTag::Arcsine: return "arcsine";
  }
  return "unknown";
}

}  // namespace recdim
