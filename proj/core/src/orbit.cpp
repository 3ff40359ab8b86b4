#include "recdim/orbit.hpp"

#include <cstring>
#include <fstream>

#include "recdim/rng.hpp"

namespace recdim {

namespace {

void check_memory(std::uint64_t n, int dim) {
  if (n * static_cast<std::uint64_t>(dim) * 16 > kOrbitMemoryCap)
    throw std::length_error("orbit exceeds the in-memory cap; use the streaming visitor");
}

/// Random bit reservoir with 128-bit windows at arbitrary bit offsets; the
/// exact binary expansion behind Doubling orbits.
struct BitStream {
  std::vector<std::uint64_t> words;
  explicit BitStream(std::uint64_t seed, std::uint64_t bits) {
    SplitMix64 rng(seed);
    words.resize(static_cast<std::size_t>(bits / 64 + 4));
    for (auto& w : words) w = rng.next();
  }
  u128 window(std::uint64_t bit) const {
    std::size_t q = static_cast<std::size_t>(bit >> 6);
    unsigned s = static_cast<unsigned>(bit & 63);
    u128 hi = (static_cast<u128>(words[q]) << 64) | words[q + 1];
    if (s == 0) return hi;
    return (hi << s) | (words[q + 2] >> (64 - s));
  }
};

/// Base-3 digit reservoir (digits in {0,2}) behind CantorShift orbits.
struct DigitStream {
  std::vector<std::uint8_t> digits;
  explicit DigitStream(std::uint64_t seed, std::uint64_t count) {
    SplitMix64 rng(seed);
    digits.resize(static_cast<std::size_t>(count + kCantorDepth + 1));
    for (auto& d : digits) d = (rng.next() & 1) ? 2 : 0;
  }
};

u128 cantor_window_value(const std::vector<std::uint8_t>& digits, std::uint64_t at) {
  std::vector<std::uint8_t> w(digits.begin() + static_cast<std::ptrdiff_t>(at),
                              digits.begin() + static_cast<std::ptrdiff_t>(at) + kCantorDepth);
  return Point::cantor(std::move(w)).c[0].raw;
}

}  // namespace

Point OrbitBuffer::point(std::size_t i) const {
  switch (system.space) {
    case Space::Circle:
      return Point::circle(FixedPointAngle{x_raw(i)});
    case Space::Torus2:
      return Point::torus(FixedPointAngle{x_raw(i)}, FixedPointAngle{y_raw(i)});
    case Space::Interval: {
      Point p;
      p.space = Space::Interval;
      p.dim = 1;
      p.c[0] = FixedPointAngle{x_raw(i)};
      return p;
    }
    case Space::CantorCode: {
      // Value-only view; digit arrays live in the generation stream.
      Point p;
      p.space = Space::CantorCode;
      p.dim = 1;
      p.c[0] = FixedPointAngle{x_raw(i)};
      return p;
    }
  }
  throw std::logic_error("unknown space");
}

OrbitBuffer generate_orbit(const SystemSpec& sys, const Point& start, std::uint64_t burn_in,
                           std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  check_memory(n, sys.dim);
  if ((sys.kind == SystemKind::Doubling && burn_in + n > 120) ||
      (sys.kind == SystemKind::CantorShift && burn_in + n > static_cast<std::uint64_t>(kCantorDepth) - 8))
    throw std::invalid_argument(
        "stored-start orbits of shift systems are limited by the stored precision; "
        "use generate_orbit_seeded");
  if (sys.arith == ArithTag::Double && burn_in + n > sys.double_safe_len)
    throw std::invalid_argument("double-arithmetic orbit exceeds the declared safe length");

  OrbitBuffer orb;
  orb.kind = BufferKind::Orbit;
  orb.system = sys;
  orb.burn_in = burn_in;
  orb.n = n;
  orb.dim = sys.dim;
  orb.coords.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(sys.dim));

  Point p = start;
  for (std::uint64_t i = 0; i < burn_in; ++i) p = step(sys, p);
  orb.start = p;
  for (std::uint64_t i = 0; i < n; ++i) {
    orb.coords.push_back(p.c[0].raw);
    if (sys.dim == 2) orb.coords.push_back(p.c[1].raw);
    if (i + 1 < n) p = step(sys, p);
  }
  return orb;
}

namespace {

template <class Visit>
void visit_orbit_impl(const SystemSpec& sys, std::uint64_t seed, std::uint64_t burn_in,
                      std::uint64_t n, Visit&& visit) {
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  std::uint64_t start_seed = substream_seed(seed, "orbit_start");
  switch (sys.kind) {
    case SystemKind::Doubling: {
      BitStream stream(start_seed, burn_in + n + 130);
      for (std::uint64_t i = 0; i < n; ++i) visit(i, stream.window(burn_in + i), 0);
      return;
    }
    case SystemKind::CantorShift: {
      DigitStream stream(start_seed, burn_in + n + 2);
      for (std::uint64_t i = 0; i < n; ++i)
        visit(i, cantor_window_value(stream.digits, burn_in + i), 0);
      return;
    }
    case SystemKind::Rotation: {
      Point p0 = sample_one(sys, start_seed);
      FixedPointAngle x = p0.c[0] + mul_mod1(sys.angle, burn_in);
      for (std::uint64_t i = 0; i < n; ++i) {
        visit(i, x.raw, 0);
        x += sys.angle;
      }
      return;
    }
    case SystemKind::CatMap: {
      Point p0 = sample_one(sys, start_seed);
      u128 x = p0.c[0].raw, y = p0.c[1].raw;
      for (std::uint64_t i = 0; i < burn_in; ++i) {
        u128 nx = (x << 1) + y;
        y = x + y;
        x = nx;
      }
      for (std::uint64_t i = 0; i < n; ++i) {
        visit(i, x, y);
        u128 nx = (x << 1) + y;
        y = x + y;
        x = nx;
      }
      return;
    }
    case SystemKind::Logistic: {
      if (burn_in + n > sys.double_safe_len)
        throw std::invalid_argument("double-arithmetic orbit exceeds the declared safe length");
      double x = sample_one(sys, start_seed).x();
      for (std::uint64_t i = 0; i < burn_in; ++i) x = std::min(1.0, std::max(0.0, 4.0 * x * (1.0 - x)));
      for (std::uint64_t i = 0; i < n; ++i) {
        visit(i, FixedPointAngle::from_double(x == 1.0 ? std::nextafter(1.0, 0.0) : x).raw, 0);
        x = std::min(1.0, std::max(0.0, 4.0 * x * (1.0 - x)));
      }
      return;
    }
    case SystemKind::ConstantMap: {
      Point p = sample_one(sys, start_seed);
      if (burn_in > 0) p = Point::circle(sys.const_target);
      for (std::uint64_t i = 0; i < n; ++i) {
        visit(i, p.c[0].raw, 0);
        p = Point::circle(sys.const_target);
      }
      return;
    }
  }
  throw std::logic_error("unknown system kind");
}

}  // namespace

void visit_orbit_seeded(const SystemSpec& sys, std::uint64_t seed, std::uint64_t burn_in,
                        std::uint64_t n,
                        const std::function<void(std::uint64_t, u128, u128)>& visit) {
  visit_orbit_impl(sys, seed, burn_in, n, visit);
}

void generate_orbit_seeded_into(OrbitBuffer& orb, const SystemSpec& sys, std::uint64_t seed,
                                std::uint64_t burn_in, std::uint64_t n) {
  check_memory(n, sys.dim);
  orb.kind = BufferKind::Orbit;
  orb.system = sys;
  orb.seed = seed;
  orb.burn_in = burn_in;
  orb.n = n;
  orb.dim = sys.dim;
  orb.coords.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(sys.dim));
  u128* out = orb.coords.data();
  if (sys.dim == 2) {
    visit_orbit_impl(sys, seed, burn_in, n, [out](std::uint64_t i, u128 x, u128 y) {
      out[2 * i] = x;
      out[2 * i + 1] = y;
    });
  } else {
    visit_orbit_impl(sys, seed, burn_in, n, [out](std::uint64_t i, u128 x, u128) {
      out[i] = x;
    });
  }
  orb.start = orb.point(0);
}

OrbitBuffer generate_orbit_seeded(const SystemSpec& sys, std::uint64_t seed,
                                  std::uint64_t burn_in, std::uint64_t n) {
  OrbitBuffer orb;
  generate_orbit_seeded_into(orb, sys, seed, burn_in, n);
  return orb;
}

OrbitBuffer generate_orbit_prefixed(const SystemSpec& sys, const Point& start,
                                    std::uint64_t seed, std::uint64_t burn_in,
                                    std::uint64_t n) {
  if (sys.kind != SystemKind::Doubling)
    throw std::invalid_argument("prefixed orbits are defined for the doubling map only");
  check_memory(n, 1);
  BitStream stream(substream_seed(seed, "orbit_prefix_tail"), burn_in + n + 130);
  // overwrite the first 128 stream bits with the start's expansion
  stream.words[0] = static_cast<std::uint64_t>(start.c[0].raw >> 64);
  stream.words[1] = static_cast<std::uint64_t>(start.c[0].raw);

  OrbitBuffer orb;
  orb.kind = BufferKind::Orbit;
  orb.system = sys;
  orb.seed = seed;
  orb.burn_in = burn_in;
  orb.n = n;
  orb.dim = 1;
  orb.coords.resize(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) orb.coords[i] = stream.window(burn_in + i);
  orb.start = orb.point(0);
  return orb;
}

OrbitBuffer sample_cloud(const SystemSpec& sys, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_cloud requires n >= 1");
  check_memory(n, sys.dim);
  OrbitBuffer cloud;
  cloud.kind = BufferKind::IidSample;
  cloud.system = sys;
  cloud.seed = seed;
  cloud.burn_in = 0;
  cloud.n = n;
  cloud.dim = sys.dim;
  cloud.coords.resize(n * static_cast<std::size_t>(sys.dim));
  for (std::size_t i = 0; i < n; ++i) {
    Point p = sample_one(sys, substream_seed(seed, "measure", i));
    cloud.coords[i * cloud.dim] = p.c[0].raw;
    if (cloud.dim == 2) cloud.coords[i * cloud.dim + 1] = p.c[1].raw;
  }
  cloud.start = cloud.point(0);
  return cloud;
}

namespace {

constexpr char kCacheMagic[8] = {'R', 'D', 'O', 'B', '0', '0', '0', '1'};

struct CacheHeader {
  char magic[8];
  std::uint64_t system_hash;
  std::uint64_t seed;
  std::uint64_t burn_in;
  std::uint64_t n;
  std::uint64_t start_lo[2];
  std::uint64_t start_hi[2];
  std::uint32_t dim;
  std::uint32_t arith;
};

}  // namespace

void write_orbit_cache(const OrbitBuffer& orb, const std::string& path) {
  CacheHeader h{};
  std::memcpy(h.magic, kCacheMagic, 8);
  h.system_hash = orb.system.hash();
  h.seed = orb.seed;
  h.burn_in = orb.burn_in;
  h.n = orb.n;
  for (int c = 0; c < 2; ++c) {
    h.start_lo[c] = static_cast<std::uint64_t>(orb.start.c[c].raw);
    h.start_hi[c] = static_cast<std::uint64_t>(orb.start.c[c].raw >> 64);
  }
  h.dim = static_cast<std::uint32_t>(orb.dim);
  h.arith = static_cast<std::uint32_t>(orb.system.arith);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write orbit cache: " + path);
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));
  out.write(reinterpret_cast<const char*>(orb.coords.data()),
            static_cast<std::streamsize>(orb.coords.size() * sizeof(u128)));
}

OrbitBuffer read_orbit_cache(const std::string& path, const SystemSpec& expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read orbit cache: " + path);
  CacheHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!in || std::memcmp(h.magic, kCacheMagic, 8) != 0)
    throw std::runtime_error("orbit cache header mismatch: " + path);
  if (h.system_hash != expected.hash() || h.arith != static_cast<std::uint32_t>(expected.arith) ||
      h.dim != static_cast<std::uint32_t>(expected.dim))
    throw std::runtime_error("orbit cache was generated for a different system");
  OrbitBuffer orb;
  orb.kind = BufferKind::Orbit;
  orb.system = expected;
  orb.seed = h.seed;
  orb.burn_in = h.burn_in;
  orb.n = h.n;
  orb.dim = static_cast<int>(h.dim);
  orb.coords.resize(static_cast<std::size_t>(h.n) * h.dim);
  in.read(reinterpret_cast<char*>(orb.coords.data()),
          static_cast<std::streamsize>(orb.coords.size() * sizeof(u128)));
  if (!in) throw std::runtime_error("orbit cache truncated: " + path);
  orb.start = orb.point(0);
  return orb;
}

}  // namespace recdim
