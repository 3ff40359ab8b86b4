#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "recdim/system.hpp"

namespace recdim {

enum class BufferKind : std::uint8_t { Orbit, IidSample };

/// A stored orbit segment (or i.i.d. sample cloud) with deterministic
/// provenance.  points[i] = T^{burn_in + i}(start); regenerating from the
/// same inputs yields a bit-identical buffer.
struct OrbitBuffer {
  BufferKind kind = BufferKind::Orbit;
  SystemSpec system;
  Point start;
  std::uint64_t seed = 0;     // stream systems and sample clouds
  std::uint64_t burn_in = 0;
  std::uint64_t n = 0;
  int dim = 1;
  std::vector<u128> coords;   // interleaved per point

  u128 x_raw(std::size_t i) const { return coords[i * dim]; }
  u128 y_raw(std::size_t i) const { return coords[i * dim + 1]; }
  Point point(std::size_t i) const;
  std::size_t size() const { return n; }
};

inline constexpr std::uint64_t kOrbitMemoryCap = 3'200'000'000ULL;  // bytes

/// Orbit by literal iteration of step() from a stored start.  Exact for
/// Rotation/CatMap/ConstantMap; Doubling and CantorShift shift information
/// out of the stored point, so lengths beyond the stored precision are
/// rejected (use generate_orbit_seeded for long runs).
OrbitBuffer generate_orbit(const SystemSpec& sys, const Point& start,
                           std::uint64_t burn_in, std::uint64_t n);

/// Orbit whose start is drawn from the system's reference measure under the
/// given seed.  For Doubling/CantorShift the seed defines the full
/// bit/digit expansion of the start, so arbitrarily long orbits stay exact
/// at the stored precision (each point is a 128-bit / 60-digit window of
/// one fixed expansion).
OrbitBuffer generate_orbit_seeded(const SystemSpec& sys, std::uint64_t seed,
                                  std::uint64_t burn_in, std::uint64_t n);

/// Same, reusing the buffer's existing allocation.
void generate_orbit_seeded_into(OrbitBuffer& orb, const SystemSpec& sys, std::uint64_t seed,
                                std::uint64_t burn_in, std::uint64_t n);

/// Doubling orbit from an explicit start: the start's 128 stored bits are
/// the expansion prefix and the seeded stream continues it, so long orbits
/// from decimal initial data keep exact window arithmetic.
OrbitBuffer generate_orbit_prefixed(const SystemSpec& sys, const Point& start,
                                    std::uint64_t seed, std::uint64_t burn_in, std::uint64_t n);

/// Streaming variant: visit(i, xr, yr) per point without storing the orbit.
void visit_orbit_seeded(const SystemSpec& sys, std::uint64_t seed, std::uint64_t burn_in,
                        std::uint64_t n,
                        const std::function<void(std::uint64_t, u128, u128)>& visit);

/// I.i.d. reference-measure samples packed like an orbit buffer, for
/// occupation-count dimension estimates.
OrbitBuffer sample_cloud(const SystemSpec& sys, std::size_t n, std::uint64_t seed);

/// Binary orbit cache.  Little-endian header (system hash, start, burn_in,
/// n, arithmetic tag) followed by raw coordinate words; loads require an
/// exact header match against the requesting system.
void write_orbit_cache(const OrbitBuffer& orb, const std::string& path);
OrbitBuffer read_orbit_cache(const std::string& path, const SystemSpec& expected);

}  // namespace recdim
