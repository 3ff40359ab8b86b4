#include "recdim/grid_index.hpp"

#include <stdexcept>

namespace recdim {

namespace {

u128 raw_dist_1d(const OrbitBuffer& pts, std::size_t i, u128 y) {
  return pts.system.metric == MetricTag::CircleWrap ? circle_dist_raw(pts.coords[i], y)
                                                    : interval_dist_raw(pts.coords[i], y);
}

u128 raw_dist_2d(const OrbitBuffer& pts, std::size_t i, u128 yx, u128 yy) {
  u128 dx = circle_dist_raw(pts.coords[2 * i], yx);
  u128 dy = circle_dist_raw(pts.coords[2 * i + 1], yy);
  return dx > dy ? dx : dy;
}

/// Sum of cell_count over the wrapped cell range [lo, hi] via prefix sums.
std::uint64_t range_sum_1d(const GridIndex& idx, std::uint32_t lo, std::uint32_t hi) {
  const auto& pre = idx.prefix;
  if (lo <= hi) return pre[hi + 1] - pre[lo];
  return (pre[idx.cells_axis] - pre[lo]) + pre[hi + 1];
}

std::uint64_t sat_at(const GridIndex& idx, std::uint32_t i, std::uint32_t j) {
  return idx.prefix[static_cast<std::size_t>(i) * (idx.cells_axis + 1) + j];
}

/// Rectangle sum over non-wrapped cell ranges [x0,x1] x [y0,y1].
std::uint64_t sat_rect(const GridIndex& idx, std::uint32_t x0, std::uint32_t x1,
                       std::uint32_t y0, std::uint32_t y1) {
  return sat_at(idx, x1 + 1, y1 + 1) - sat_at(idx, x0, y1 + 1) - sat_at(idx, x1 + 1, y0) +
         sat_at(idx, x0, y0);
}

struct AxisSpan {
  std::uint32_t first = 0, last = 0;  // wrapped inclusive cell range
  std::uint32_t count = 0;            // number of cells spanned
};

/// Cells touched by the open arc (center-r, center+r) on a wrapped axis.
/// Requires 2r <= 2^127 so the arc cannot lap itself.
AxisSpan arc_span(u128 center, u128 r_raw, int level, std::uint32_t cells) {
  AxisSpan s;
  u128 lo = center - r_raw + 1;
  u128 hi = center + r_raw - 1;
  s.first = static_cast<std::uint32_t>(lo >> (128 - level));
  s.last = static_cast<std::uint32_t>(hi >> (128 - level));
  s.count = ((s.last - s.first) & (cells - 1)) + 1;
  return s;
}

/// Same for a non-wrapped interval axis ([0,1) with euclidean distance).
AxisSpan interval_span(u128 center, u128 r_raw, int level) {
  AxisSpan s;
  u128 lo = center > r_raw ? center - r_raw + 1 : static_cast<u128>(0);
  u128 max = ~static_cast<u128>(0);
  u128 hi = (max - center > r_raw) ? center + r_raw - 1 : max;
  s.first = static_cast<std::uint32_t>(lo >> (128 - level));
  s.last = static_cast<std::uint32_t>(hi >> (128 - level));
  s.count = s.last - s.first + 1;
  return s;
}

}  // namespace

GridIndex build_grid_index(const OrbitBuffer& pts, int level, std::size_t max_cells) {
  if (level < 1 || level > 30) throw std::invalid_argument("grid level out of range");
  std::size_t cells = static_cast<std::size_t>(1)
                      << (static_cast<std::size_t>(level) * static_cast<std::size_t>(pts.dim));
  if (cells > max_cells)
    throw std::length_error("grid would exceed the configured cell cap");

  GridIndex idx;
  idx.level = level;
  idx.dim = pts.dim;
  idx.cells_axis = static_cast<std::uint32_t>(1) << level;
  idx.cell_count.assign(cells, 0);

  auto cell_id = [&](std::size_t i) -> std::size_t {
    if (pts.dim == 1) return idx.cell_of_raw(pts.coords[i]);
    std::size_t cx = idx.cell_of_raw(pts.coords[2 * i]);
    std::size_t cy = idx.cell_of_raw(pts.coords[2 * i + 1]);
    return (cx << level) | cy;
  };

  for (std::size_t i = 0; i < pts.n; ++i) idx.cell_count[cell_id(i)]++;

  idx.offsets.assign(cells + 1, 0);
  for (std::size_t c = 0; c < cells; ++c) idx.offsets[c + 1] = idx.offsets[c] + idx.cell_count[c];
  idx.items.resize(pts.n);
  std::vector<std::uint32_t> cursor(idx.offsets.begin(), idx.offsets.end() - 1);
  for (std::size_t i = 0; i < pts.n; ++i)
    idx.items[cursor[cell_id(i)]++] = static_cast<std::uint32_t>(i);

  if (pts.dim == 1) {
    idx.prefix.assign(cells + 1, 0);
    for (std::size_t c = 0; c < cells; ++c) idx.prefix[c + 1] = idx.prefix[c] + idx.cell_count[c];
  } else {
    std::size_t side = idx.cells_axis;
    idx.prefix.assign((side + 1) * (side + 1), 0);
    for (std::size_t x = 0; x < side; ++x) {
      std::uint64_t row = 0;
      for (std::size_t y = 0; y < side; ++y) {
        row += idx.cell_count[(x << level) | y];
        idx.prefix[(x + 1) * (side + 1) + (y + 1)] = idx.prefix[x * (side + 1) + (y + 1)] + row;
      }
    }
  }
  return idx;
}

namespace {

std::uint64_t count_1d(const OrbitBuffer& pts, const GridIndex& idx, u128 y, u128 r_raw) {
  bool wrap = pts.system.metric == MetricTag::CircleWrap;
  std::uint32_t cells = idx.cells_axis;

  // k = 1 on the circle: the open ball misses only the antipode.
  if (wrap && r_raw == (static_cast<u128>(1) << 127)) {
    u128 anti = y + r_raw;
    std::uint32_t c = idx.cell_of_raw(anti);
    std::uint64_t miss = 0;
    for (std::uint32_t j = idx.offsets[c]; j < idx.offsets[c + 1]; ++j)
      if (pts.coords[idx.items[j]] == anti) ++miss;
    return pts.n - miss;
  }

  AxisSpan span = wrap ? arc_span(y, r_raw, idx.level, cells) : interval_span(y, r_raw, idx.level);
  auto scan_cell = [&](std::uint32_t c) {
    std::uint64_t hit = 0;
    for (std::uint32_t j = idx.offsets[c]; j < idx.offsets[c + 1]; ++j)
      if (raw_dist_1d(pts, idx.items[j], y) < r_raw) ++hit;
    return hit;
  };

  if (span.count == 1) return scan_cell(span.first);
  std::uint64_t total = scan_cell(span.first);
  if (span.last != span.first) total += scan_cell(span.last);
  if (span.count > 2) {
    std::uint32_t lo = (span.first + 1) & (cells - 1);
    std::uint32_t hi = (span.last + cells - 1) & (cells - 1);
    if (!wrap) {
      lo = span.first + 1;
      hi = span.last - 1;
    }
    total += range_sum_1d(idx, lo, hi);
  }
  return total;
}

std::uint64_t count_2d(const OrbitBuffer& pts, const GridIndex& idx, u128 yx, u128 yy,
                       u128 r_raw) {
  // Max-metric distances never exceed 1/2, so r = 1/2 captures everything
  // except points with a coordinate exactly antipodal; scan linearly.
  if (r_raw >= (static_cast<u128>(1) << 127)) {
    std::uint64_t hit = 0;
    for (std::size_t i = 0; i < pts.n; ++i)
      if (raw_dist_2d(pts, i, yx, yy) < r_raw) ++hit;
    return hit;
  }

  std::uint32_t cells = idx.cells_axis;
  AxisSpan sx = arc_span(yx, r_raw, idx.level, cells);
  AxisSpan sy = arc_span(yy, r_raw, idx.level, cells);

  auto scan_cell = [&](std::uint32_t cx, std::uint32_t cy) {
    std::uint64_t hit = 0;
    std::size_t c = (static_cast<std::size_t>(cx) << idx.level) | cy;
    for (std::uint32_t j = idx.offsets[c]; j < idx.offsets[c + 1]; ++j)
      if (raw_dist_2d(pts, idx.items[j], yx, yy) < r_raw) ++hit;
    return hit;
  };

  std::uint64_t total = 0;

  // Interior block: cells strictly inside both spans, summed via the SAT
  // (split into contiguous pieces at the wrap seam).
  if (sx.count > 2 && sy.count > 2) {
    std::uint32_t x0 = (sx.first + 1) & (cells - 1), x1 = (sx.last + cells - 1) & (cells - 1);
    std::uint32_t y0 = (sy.first + 1) & (cells - 1), y1 = (sy.last + cells - 1) & (cells - 1);
    std::pair<std::uint32_t, std::uint32_t> xs[2];
    std::pair<std::uint32_t, std::uint32_t> ys[2];
    int nx = 0, ny = 0;
    if (x0 <= x1) {
      xs[nx++] = {x0, x1};
    } else {
      xs[nx++] = {x0, cells - 1};
      xs[nx++] = {0, x1};
    }
    if (y0 <= y1) {
      ys[ny++] = {y0, y1};
    } else {
      ys[ny++] = {y0, cells - 1};
      ys[ny++] = {0, y1};
    }
    for (int a = 0; a < nx; ++a)
      for (int b = 0; b < ny; ++b)
        total += sat_rect(idx, xs[a].first, xs[a].second, ys[b].first, ys[b].second);
  }

  // Boundary ring: first/last x-columns over the full y-span, plus first/last
  // y-rows over the interior x-range.
  auto for_span = [&](const AxisSpan& s, auto&& fn) {
    std::uint32_t c = s.first;
    for (std::uint32_t step = 0; step < s.count; ++step) {
      fn(c, step);
      c = (c + 1) & (cells - 1);
    }
  };
  for_span(sy, [&](std::uint32_t cy, std::uint32_t) {
    total += scan_cell(sx.first, cy);
    if (sx.count > 1) total += scan_cell(sx.last, cy);
  });
  if (sx.count > 2) {
    for_span(sx, [&](std::uint32_t cx, std::uint32_t step) {
      if (step == 0 || step + 1 == sx.count) return;
      total += scan_cell(cx, sy.first);
      if (sy.count > 1) total += scan_cell(cx, sy.last);
    });
  }
  return total;
}

}  // namespace

std::vector<std::uint64_t> occupation_counts(const OrbitBuffer& pts, const GridIndex& idx,
                                             const Point& y, const RadiusSchedule& sched) {
  if (idx.dim != pts.dim) throw std::invalid_argument("grid index does not match the buffer");
  std::vector<std::uint64_t> counts;
  counts.reserve(static_cast<std::size_t>(sched.count()));
  for (int k = sched.k_min; k <= sched.k_max; ++k) {
    u128 r = sched.threshold_raw(k);
    if (pts.dim == 1)
      counts.push_back(count_1d(pts, idx, y.c[0].raw, r));
    else
      counts.push_back(count_2d(pts, idx, y.c[0].raw, y.c[1].raw, r));
  }
  return counts;
}

std::vector<std::uint64_t> occupation_counts_linear(const OrbitBuffer& pts, const Point& y,
                                                    const RadiusSchedule& sched) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(sched.count()), 0);
  for (std::size_t i = 0; i < pts.n; ++i) {
    u128 d = pts.dim == 1 ? raw_dist_1d(pts, i, y.c[0].raw)
                          : raw_dist_2d(pts, i, y.c[0].raw, y.c[1].raw);
    for (int k = sched.k_min; k <= sched.k_max; ++k) {
      if (d < sched.threshold_raw(k))
        counts[static_cast<std::size_t>(k - sched.k_min)]++;
      else
        break;
    }
  }
  return counts;
}

}  // namespace recdim
