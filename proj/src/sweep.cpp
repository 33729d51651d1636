#include "orthotopo/sweep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orthotopo {

namespace {

void check_range(const Range& r, const char* name) {
  if (!(r.lo >= 0.0) || !(r.hi > r.lo) || !std::isfinite(r.hi))
    throw std::invalid_argument(std::string(name) +
                                " range must satisfy 0 <= lo < hi");
}

// Signed offset from a surface, +inf where the surface does not exist (the
// C3/C4 loci run off to infinity at d3 = 1).
double side(const SurfaceAtlas& atlas, SurfaceId id, double d3, double d4,
            double r2) {
  if (!surface_applicable(id, d3) || d3 == 1.0)
    return (id == SurfaceId::C3 || id == SurfaceId::C4)
               ? -std::numeric_limits<double>::infinity()
               : std::numeric_limits<double>::quiet_NaN();
  return d4 - atlas.value(id, d3, r2);
}

}  // namespace

const RasterCell* PartitionRaster::lookup(double d3, double d4) const {
  const int i = static_cast<int>(std::ceil((d3 - d3_range.lo) / d3_range.step(n3))) - 1;
  const int j = static_cast<int>(std::ceil((d4 - d4_range.lo) / d4_range.step(n4))) - 1;
  if (i < 0 || i >= n3 || j < 0 || j >= n4) return nullptr;
  return &cell(i, j);
}

PartitionRaster sweep(double r2, Range d3_range, Range d4_range, int n3,
                      int n4, const SweepOptions& opts) {
  if (!(r2 > 0.0)) throw std::invalid_argument("sweep needs r2 > 0");
  check_range(d3_range, "d3");
  check_range(d4_range, "d4");
  if (n3 < 16 || n4 < 16)
    throw std::invalid_argument("sweep resolution must be >= 16");

  PartitionRaster raster;
  raster.r2 = r2;
  raster.d3_range = d3_range;
  raster.d4_range = d4_range;
  raster.n3 = n3;
  raster.n4 = n4;
  raster.mode = opts.mode;
  raster.boundary_band = std::hypot(d3_range.step(n3), d4_range.step(n4));
  raster.cells.resize(static_cast<std::size_t>(n3) * static_cast<std::size_t>(n4));

  std::size_t stride = 0;
  if (opts.mode == Method::Surfaces && opts.spot_fraction > 0.0)
    stride = static_cast<std::size_t>(std::max(1.0, std::round(1.0 / opts.spot_fraction)));

  for (int j = 0; j < n4; ++j) {
    for (int i = 0; i < n3; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * static_cast<std::size_t>(n3) +
                              static_cast<std::size_t>(i);
      const Geometry g(1.0, raster.d3_at(i), raster.d4_at(j), r2);
      const Classification s =
          classify_by_surfaces(g, raster.boundary_band, opts.atlas);
      RasterCell& cell = raster.cells[idx];

      const bool run_numeric =
          opts.mode != Method::Surfaces || (stride > 0 && idx % stride == stride / 2);
      std::optional<Classification> n;
      if (run_numeric) n = classify_numeric(g, opts.numeric);

      const Classification& primary = (opts.mode == Method::Numeric) ? *n : s;
      cell.domain = primary.domain;
      cell.wt = primary.wt;
      cell.n_cusps = primary.n_cusps;
      cell.n_nodes = primary.n_nodes;
      cell.boundary = s.boundary || (opts.mode == Method::Numeric && n->boundary);
      if (n) {
        cell.numeric_wt = n->wt;
        const bool agree = n->wt == s.wt;
        ++raster.spot.checked;
        raster.spot.agreed += agree ? 1 : 0;
        if (!s.boundary) {
          ++raster.spot.checked_off_band;
          raster.spot.agreed_off_band += agree ? 1 : 0;
        }
      }
    }
  }
  return raster;
}

RegionStats region_stats(const PartitionRaster& raster) {
  RegionStats st;
  st.total_cells = static_cast<int>(raster.cells.size());
  for (const auto& c : raster.cells) {
    if (c.boundary) {
      ++st.boundary_cells;
      continue;
    }
    ++st.count[static_cast<std::size_t>(static_cast<int>(c.wt) - 1)];
    ++st.domain_count[static_cast<std::size_t>(c.domain - 1)];
  }
  for (std::size_t k = 0; k < st.count.size(); ++k)
    st.fraction[k] = st.total_cells > 0
                         ? static_cast<double>(st.count[k]) / st.total_cells
                         : 0.0;
  return st;
}

std::vector<OverlayCurve> boundary_overlay(double r2, Range d3_range, int n,
                                           const SurfaceAtlas& atlas) {
  if (n < 50) throw std::invalid_argument("boundary_overlay needs n >= 50");
  check_range(d3_range, "d3");
  std::vector<OverlayCurve> out;
  for (SurfaceId id : kAllSurfaces) {
    OverlayCurve curve{id, {}};
    for (int k = 0; k < n; ++k) {
      const double d3 = d3_range.lo + (d3_range.hi - d3_range.lo) * k / (n - 1);
      if (d3 <= 0.0 || !surface_applicable(id, d3)) continue;
      curve.points.emplace_back(d3, atlas.value(id, d3, r2));
    }
    if (!curve.points.empty()) out.push_back(std::move(curve));
  }
  return out;
}

std::vector<std::pair<int, int>> adjacency_violations(
    const PartitionRaster& raster, const SurfaceAtlas& atlas) {
  std::vector<std::pair<int, int>> bad;
  auto separated = [&](int i0, int j0, int i1, int j1) {
    const double a3 = raster.d3_at(i0), a4 = raster.d4_at(j0);
    const double b3 = raster.d3_at(i1), b4 = raster.d4_at(j1);
    for (SurfaceId id : kAllSurfaces) {
      const double sa = side(atlas, id, a3, a4, raster.r2);
      const double sb = side(atlas, id, b3, b4, raster.r2);
      if (std::isnan(sa) || std::isnan(sb)) continue;
      if ((sa < 0.0) != (sb < 0.0)) return true;
    }
    // The C3 and C4 branches swap at d3 = 1.
    return (a3 - 1.0) * (b3 - 1.0) <= 0.0;
  };
  auto check = [&](int i0, int j0, int i1, int j1) {
    const auto& a = raster.cell(i0, j0);
    const auto& b = raster.cell(i1, j1);
    if (a.boundary || b.boundary || a.wt == b.wt) return;
    if (!separated(i0, j0, i1, j1))
      bad.emplace_back(j0 * raster.n3 + i0, j1 * raster.n3 + i1);
  };
  for (int j = 0; j < raster.n4; ++j) {
    for (int i = 0; i < raster.n3; ++i) {
      if (i + 1 < raster.n3) check(i, j, i + 1, j);
      if (j + 1 < raster.n4) check(i, j, i, j + 1);
    }
  }
  return bad;
}

}  // namespace orthotopo
