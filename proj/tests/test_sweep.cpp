#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "orthotopo/sweep.hpp"

using namespace orthotopo;
using WT = WorkspaceTopology;

namespace {

const PartitionRaster& raster_r2(double r2) {
  static std::vector<std::pair<double, PartitionRaster>> cache;
  for (const auto& [k, v] : cache)
    if (k == r2) return v;
  SweepOptions opts;
  opts.spot_fraction = 0.0;
  cache.emplace_back(r2, sweep(r2, Range{}, Range{}, 300, 300, opts));
  return cache.back().second;
}

// Pairs of overlay curves whose difference changes sign over d3.
std::set<std::pair<int, int>> crossing_pairs(const std::vector<OverlayCurve>& ov) {
  std::set<std::pair<int, int>> out;
  for (std::size_t a = 0; a < ov.size(); ++a)
    for (std::size_t b = a + 1; b < ov.size(); ++b) {
      int prev = 0;
      for (const auto& [x, ya] : ov[a].points) {
        auto it = std::find_if(ov[b].points.begin(), ov[b].points.end(),
                               [x = x](const auto& p) { return p.first == x; });
        if (it == ov[b].points.end()) continue;
        const double diff = ya - it->second;
        if (std::abs(diff) < 1e-12) continue;
        const int sign = diff > 0 ? 1 : -1;
        if (prev != 0 && sign != prev)
          out.insert({static_cast<int>(ov[a].surface), static_cast<int>(ov[b].surface)});
        prev = sign;
      }
    }
  return out;
}

}  // namespace

TEST(Range, UpperEdgeSampling) {
  const Range r{0.0, 3.0};
  EXPECT_DOUBLE_EQ(r.at(0, 300), 0.01);
  EXPECT_DOUBLE_EQ(r.at(299, 300), 3.0);
  EXPECT_DOUBLE_EQ(r.at(199, 300), 2.0);
  EXPECT_DOUBLE_EQ(r.step(300), 0.01);
}

TEST(Sweep, RejectsBadInput) {
  EXPECT_THROW(sweep(0.0, Range{}, Range{}, 20, 20), std::invalid_argument);
  EXPECT_THROW(sweep(1.0, Range{1.0, 0.5}, Range{}, 20, 20), std::invalid_argument);
  EXPECT_THROW(sweep(1.0, Range{-0.1, 1.0}, Range{}, 20, 20), std::invalid_argument);
  EXPECT_THROW(sweep(1.0, Range{}, Range{}, 15, 20), std::invalid_argument);
  EXPECT_THROW(sweep(1.0, Range{}, Range{}, 20, 15), std::invalid_argument);
}

TEST(Sweep, CellCountAndOrdering) {
  const auto r = sweep(1.0, Range{}, Range{0.5, 2.5}, 40, 20);
  ASSERT_EQ(r.cells.size(), 800u);
  for (int j = 0; j < r.n4; ++j)
    for (int i = 0; i < r.n3; ++i) {
      const auto c = classify_by_surfaces(Geometry(1.0, r.d3_at(i), r.d4_at(j), 1.0));
      EXPECT_EQ(r.cell(i, j).wt, c.wt);
    }
  EXPECT_GT(r.boundary_band, 0.0);
}

TEST(Sweep, AllNineTopologiesAtUnitOffset) {
  const auto& r = raster_r2(1.0);
  const auto st = region_stats(r);
  for (int k = 1; k <= 9; ++k) EXPECT_GT(st.of(static_cast<WT>(k)), 0) << "WT" << k;
  double sum = 0.0;
  for (double f : st.fraction) sum += f;
  EXPECT_LE(sum, 1.0);
  EXPECT_GT(sum, 0.9);
  EXPECT_EQ(st.total_cells, 300 * 300);
}

TEST(Sweep, AnchorCell) {
  const auto& r = raster_r2(1.0);
  const RasterCell* c = r.lookup(2.0, 1.5);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->wt, WT::WT3);
  EXPECT_EQ(c->domain, 2);
  EXPECT_EQ(r.lookup(5.0, 1.0), nullptr);

  SweepOptions opts;
  opts.spot_fraction = 0.0;
  const auto z = sweep(1.0, Range{0.0, 3.0}, Range{0.0, 3.0}, 300, 300, opts);
  EXPECT_DOUBLE_EQ(z.d3_at(199), 2.0);
  EXPECT_DOUBLE_EQ(z.d4_at(149), 1.5);
  EXPECT_EQ(z.cell(199, 149).wt, WT::WT3);
  EXPECT_FALSE(z.cell(199, 149).boundary);
}

TEST(Sweep, NoIslandsOffTheBand) {
  EXPECT_TRUE(adjacency_violations(raster_r2(1.0)).empty());
  EXPECT_TRUE(adjacency_violations(raster_r2(0.5)).empty());
}

TEST(Sweep, Deterministic) {
  const auto a = sweep(0.7, Range{}, Range{}, 64, 64);
  const auto b = sweep(0.7, Range{}, Range{}, 64, 64);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    EXPECT_EQ(a.cells[k].wt, b.cells[k].wt);
    EXPECT_EQ(a.cells[k].boundary, b.cells[k].boundary);
    EXPECT_EQ(a.cells[k].numeric_wt, b.cells[k].numeric_wt);
  }
}

TEST(Sweep, SpotCheckAgreesOffBand) {
  SweepOptions opts;
  opts.spot_fraction = 0.05;
  const auto r = sweep(1.0, Range{}, Range{}, 60, 60, opts);
  EXPECT_GT(r.spot.checked_off_band, 100);
  EXPECT_EQ(r.spot.agreed_off_band, r.spot.checked_off_band);
}

TEST(Sweep, NumericModeMatchesSurfacesMode) {
  SweepOptions num;
  num.mode = Method::Numeric;
  const auto n = sweep(1.0, Range{}, Range{}, 50, 50, num);
  const auto s = sweep(1.0, Range{}, Range{}, 50, 50);
  int compared = 0, agree = 0;
  for (std::size_t k = 0; k < n.cells.size(); ++k) {
    if (s.cells[k].boundary) continue;
    ++compared;
    agree += n.cells[k].wt == s.cells[k].wt;
  }
  EXPECT_GT(compared, 1500);
  EXPECT_GE(agree, 0.99 * compared);
}

TEST(Trends, AreasAsOffsetDecreases) {
  const auto lo = region_stats(raster_r2(0.5));
  const auto hi = region_stats(raster_r2(1.0));
  for (WT wt : {WT::WT1, WT::WT2, WT::WT7, WT::WT9})
    EXPECT_GT(lo.fraction_of(wt), hi.fraction_of(wt)) << to_string(wt);
  for (WT wt : {WT::WT3, WT::WT4, WT::WT5, WT::WT6})
    EXPECT_LT(lo.fraction_of(wt), hi.fraction_of(wt)) << to_string(wt);
}

TEST(Trends, FourNodeRegionVanishesForSmallOffset) {
  // Off-band cells of the raster.
  const auto st = region_stats(raster_r2(0.05));
  ASSERT_GT(st.domain(2), 0);
  EXPECT_LT(static_cast<double>(st.of(WT::WT4)) / st.domain(2), 1e-3);

  // Area of the sliver between d4 = d3 and C2, against the whole domain 2
  // area, by midpoint quadrature over d3 in (0.02, 3] with d4 capped at 3.
  const double r2 = 0.05;
  double wt4 = 0.0, dom2 = 0.0;
  constexpr int n = 200000;
  const double h = (3.0 - 0.02) / n;
  for (int k = 0; k < n; ++k) {
    const double d3 = 0.02 + (k + 0.5) * h;
    const double lo = std::min(surface_value(SurfaceId::C1, d3, r2), 3.0);
    const double hi = std::min(surface_value(SurfaceId::C2, d3, r2), 3.0);
    dom2 += std::max(hi - lo, 0.0) * h;
    wt4 += std::max(hi - std::max(std::min(d3, 3.0), lo), 0.0) * h;
  }
  ASSERT_GT(dom2, 0.0);
  EXPECT_LT(wt4 / dom2, 1e-3);
}

TEST(Overlay, CrossesTheAnchorColumn) {
  const auto ov = boundary_overlay(1.0, Range{0.0, 3.0}, 301);
  auto at = [&](SurfaceId id, double d3) {
    for (const auto& c : ov)
      if (c.surface == id)
        for (const auto& [x, y] : c.points)
          if (std::abs(x - d3) < 1e-12) return y;
    return -1.0;
  };
  EXPECT_NEAR(at(SurfaceId::C2, 2.0), 2.10819, 1e-5);
  EXPECT_NEAR(at(SurfaceId::E3, 2.0), 2.28825, 1e-5);
}

TEST(Overlay, DomainRestrictions) {
  const auto ov = boundary_overlay(1.0, Range{}, 200);
  std::set<SurfaceId> ids;
  for (const auto& c : ov) {
    ids.insert(c.surface);
    ASSERT_FALSE(c.points.empty());
    for (const auto& [x, y] : c.points) {
      if (c.surface == SurfaceId::C3) EXPECT_GT(x, 1.0);
      if (c.surface == SurfaceId::C4) EXPECT_LT(x, 1.0);
    }
  }
  EXPECT_EQ(ids.size(), 7u);
  EXPECT_THROW(boundary_overlay(1.0, Range{}, 49), std::invalid_argument);
}

TEST(Overlay, IntersectionPatternStableInOffset) {
  const auto a = crossing_pairs(boundary_overlay(0.8, Range{}, 600));
  const auto b = crossing_pairs(boundary_overlay(1.2, Range{}, 600));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
}

TEST(Stats, ExcludesBoundaryCells) {
  const auto& r = raster_r2(1.0);
  const auto st = region_stats(r);
  int labelled = 0;
  for (int c : st.count) labelled += c;
  EXPECT_EQ(labelled + st.boundary_cells, st.total_cells);
  int by_domain = 0;
  for (int d = 1; d <= 5; ++d) by_domain += st.domain(d);
  EXPECT_EQ(by_domain, labelled);
}
