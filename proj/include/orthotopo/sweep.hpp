#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "orthotopo/classifier.hpp"

namespace orthotopo {

/// Half-open parameter range (lo, hi].  A grid of n cells samples it at the
/// upper edge of each cell: lo + (hi - lo) (k + 1) / n.
struct Range {
  double lo = 0.02;
  double hi = 3.0;

  [[nodiscard]] double at(int k, int n) const {
    return lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(n);
  }
  [[nodiscard]] double step(int n) const { return (hi - lo) / n; }
};

struct RasterCell {
  int domain = 0;
  WorkspaceTopology wt = WorkspaceTopology::WT1;
  int n_cusps = 0;
  int n_nodes = 0;
  bool boundary = false;
  /// Verdict of the numerical oracle when it was run on this cell.
  std::optional<WorkspaceTopology> numeric_wt;
};

struct SpotCheck {
  int checked = 0;
  int agreed = 0;
  /// Cells checked that were off the boundary band, and their agreements.
  int checked_off_band = 0;
  int agreed_off_band = 0;
};

struct SweepOptions {
  Method mode = Method::Surfaces;
  /// In surfaces mode, fraction of cells re-classified numerically.
  double spot_fraction = 0.01;
  NumericOptions numeric{};
  SurfaceAtlas atlas{};
};

/// Classifications over a (d3, d4) grid at fixed r2 (d2 = 1).  Cells are
/// stored row-major with d4 as the row index: cells[j * n3 + i] holds
/// (d3 = d3_range.at(i, n3), d4 = d4_range.at(j, n4)).
struct PartitionRaster {
  double r2 = 1.0;
  Range d3_range;
  Range d4_range;
  int n3 = 0;
  int n4 = 0;
  Method mode = Method::Surfaces;
  /// Cells closer than this (in d4) to a separating surface are flagged.
  double boundary_band = 0.0;
  std::vector<RasterCell> cells;
  SpotCheck spot;

  [[nodiscard]] double d3_at(int i) const { return d3_range.at(i, n3); }
  [[nodiscard]] double d4_at(int j) const { return d4_range.at(j, n4); }
  [[nodiscard]] const RasterCell& cell(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(n3) +
                 static_cast<std::size_t>(i)];
  }
  /// Cell whose sample range contains (d3, d4); nullptr outside the grid.
  [[nodiscard]] const RasterCell* lookup(double d3, double d4) const;
};

PartitionRaster sweep(double r2, Range d3_range, Range d4_range, int n3,
                      int n4, const SweepOptions& opts = {});

struct RegionStats {
  std::array<int, 9> count{};
  std::array<double, 9> fraction{};
  std::array<int, 5> domain_count{};
  int boundary_cells = 0;
  int total_cells = 0;

  [[nodiscard]] int of(WorkspaceTopology wt) const {
    return count[static_cast<std::size_t>(static_cast<int>(wt) - 1)];
  }
  [[nodiscard]] double fraction_of(WorkspaceTopology wt) const {
    return fraction[static_cast<std::size_t>(static_cast<int>(wt) - 1)];
  }
  [[nodiscard]] int domain(int d) const {
    return domain_count[static_cast<std::size_t>(d - 1)];
  }
};

/// Per-topology counts over non-boundary cells; fractions are relative to
/// all cells.
RegionStats region_stats(const PartitionRaster& raster);

struct OverlayCurve {
  SurfaceId surface = SurfaceId::C1;
  std::vector<std::pair<double, double>> points;  // (d3, d4)
};

/// Sampled separating curves over [d3_range.lo, d3_range.hi] (n samples),
/// restricted to the d3 range where each surface exists.
std::vector<OverlayCurve> boundary_overlay(double r2, Range d3_range, int n,
                                           const SurfaceAtlas& atlas = {});

/// Adjacent non-boundary cells with different labels that no separating
/// surface lies between.  Empty for a raster consistent with the overlays.
std::vector<std::pair<int, int>> adjacency_violations(
    const PartitionRaster& raster, const SurfaceAtlas& atlas = {});

}  // namespace orthotopo
