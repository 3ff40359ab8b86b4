#pragma once

#include <cstdint>
#include <vector>

#include "recdim/orbit.hpp"
#include "recdim/schedule.hpp"

namespace recdim {

/// Uniform grid over the point buffer with cells of side 2^-level.  Holds
/// per-cell point lists (CSR) plus prefix sums (1D) or a summed-area table
/// (2D), so occupation counts are exact at every radius: interior cells are
/// counted wholesale, boundary cells are scanned point by point with the
/// same comparison the linear scan uses.
struct GridIndex {
  int level = 0;
  int dim = 1;
  std::uint32_t cells_axis = 0;
  std::vector<std::uint32_t> cell_count;
  std::vector<std::uint64_t> prefix;    // 1D: size cells_axis+1; 2D: SAT (cells_axis+1)^2
  std::vector<std::uint32_t> offsets;   // CSR into items, size cells+1
  std::vector<std::uint32_t> items;     // point indices grouped by cell

  std::uint32_t cell_of_raw(u128 v) const {
    return static_cast<std::uint32_t>(v >> (128 - level));
  }
};

inline constexpr std::size_t kGridCellCap = std::size_t(1) << 26;

/// One pass over the buffer.  Throws if 2^(level*dim) exceeds max_cells.
GridIndex build_grid_index(const OrbitBuffer& pts, int level,
                           std::size_t max_cells = kGridCellCap);

/// counts[k] = #{ i : d(points[i], y) < 2^-k }, nonincreasing in the index.
/// Exactly equals the linear scan for every radius in the schedule.
std::vector<std::uint64_t> occupation_counts(const OrbitBuffer& pts, const GridIndex& idx,
                                             const Point& y, const RadiusSchedule& sched);

/// Brute-force oracle for the above.
std::vector<std::uint64_t> occupation_counts_linear(const OrbitBuffer& pts, const Point& y,
                                                    const RadiusSchedule& sched);

}  // namespace recdim
