#include "orthotopo/classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace orthotopo {

namespace {

using WT = WorkspaceTopology;

struct TopologyRow {
  WT wt;
  int domain;
  FeatureCount counts;
  int isolated_nodes;
};

// Counts for WT5, WT6, WT8 and WT9 come from the numerical oracle; the test
// suite re-derives every row from traced curves.
constexpr std::array<TopologyRow, 9> kTable{{
    {WT::WT1, 1, {0, 0}, 0},
    {WT::WT2, 2, {4, 2}, 0},
    {WT::WT3, 2, {4, 0}, 0},
    {WT::WT4, 2, {4, 2}, 2},
    {WT::WT5, 3, {2, 1}, 1},
    {WT::WT6, 3, {2, 3}, 1},
    {WT::WT7, 4, {4, 4}, 2},
    {WT::WT8, 5, {0, 0}, 0},
    {WT::WT9, 5, {0, 2}, 0},
}};

const TopologyRow& row(WT wt) {
  return kTable[static_cast<std::size_t>(static_cast<int>(wt) - 1)];
}

Classification from_topology(WT wt, Method m) {
  Classification c;
  c.wt = wt;
  c.domain = row(wt).domain;
  c.n_cusps = row(wt).counts.n_cusps;
  c.n_nodes = row(wt).counts.n_nodes;
  c.n_isolated_nodes = row(wt).isolated_nodes;
  c.method = m;
  return c;
}

}  // namespace

std::string_view to_string(WorkspaceTopology wt) {
  static constexpr std::array<std::string_view, 9> names{
      "WT1", "WT2", "WT3", "WT4", "WT5", "WT6", "WT7", "WT8", "WT9"};
  return names[static_cast<std::size_t>(static_cast<int>(wt) - 1)];
}

std::optional<WorkspaceTopology> topology_from_string(std::string_view name) {
  for (const auto& r : kTable)
    if (to_string(r.wt) == name) return r.wt;
  return std::nullopt;
}

int domain_of(WorkspaceTopology wt) { return row(wt).domain; }

FeatureCount expected_counts(WorkspaceTopology wt) { return row(wt).counts; }

int cusps_of_domain(int domain) {
  switch (domain) {
    case 2:
    case 4: return 4;
    case 3: return 2;
    default: return 0;
  }
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Surfaces: return "surfaces";
    case Method::Numeric: return "numeric";
    case Method::Both: return "both";
  }
  return "?";
}

std::string_view to_string(Agreement a) {
  switch (a) {
    case Agreement::Agree: return "agree";
    case Agreement::Disagree: return "disagree";
    case Agreement::NotApplicable: return "n/a";
  }
  return "?";
}

std::optional<Method> method_from_string(std::string_view name) {
  for (Method m : {Method::Surfaces, Method::Numeric, Method::Both})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

BoundaryDistance nearest_boundary_distance(const Geometry& geom,
                                           const SurfaceAtlas& atlas) {
  const Geometry g = geom.normalized();
  BoundaryDistance best{SurfaceId::C1, std::numeric_limits<double>::infinity()};
  for (SurfaceId id : kAllSurfaces) {
    if (!surface_applicable(id, g.d3)) continue;
    const double d = std::abs(g.d4 - atlas.value(id, g.d3, g.r2));
    if (d < best.distance) best = {id, d};
  }
  return best;
}

Classification classify_by_surfaces(const Geometry& geom, double eps,
                                    const SurfaceAtlas& atlas) {
  const Geometry g = geom.normalized();
  const double d3 = g.d3, d4 = g.d4, r2 = g.r2;
  auto v = [&](SurfaceId id) { return atlas.value(id, d3, r2); };

  WT wt;
  bool asymptote = false;
  if (d4 < v(SurfaceId::C1)) {
    wt = WT::WT1;
  } else if (d4 < v(SurfaceId::C2)) {
    if (d4 < v(SurfaceId::E1))
      wt = WT::WT2;
    else if (d4 < v(SurfaceId::E2))
      wt = WT::WT3;
    else
      wt = WT::WT4;
  } else {
    int domain = 3;
    if (d3 > 1.0 && d4 >= v(SurfaceId::C3)) domain = 4;
    if (d3 < 1.0 && d4 >= v(SurfaceId::C4)) domain = 5;
    asymptote = d3 == 1.0;
    const bool below_e3 = d4 < v(SurfaceId::E3);
    if (domain == 3)
      wt = below_e3 ? WT::WT5 : WT::WT6;
    else if (domain == 4)
      wt = WT::WT7;
    else
      wt = below_e3 ? WT::WT8 : WT::WT9;
  }

  Classification c = from_topology(wt, Method::Surfaces);
  const auto nearest = nearest_boundary_distance(g, atlas);
  c.boundary = nearest.distance < eps || asymptote;
  if (c.boundary) {
    std::ostringstream os;
    os << "within " << nearest.distance << " of " << to_string(nearest.surface);
    if (asymptote) os << "; d3 = 1 (C3/C4 asymptote)";
    c.diagnostics = os.str();
  }
  return c;
}

Classification classify_from_report(const Geometry& g,
                                    const FeatureReport& report) {
  const auto& cusps = report.cusps();
  const int n_cusps = static_cast<int>(cusps.size());
  const int n_nodes = report.count.n_nodes;
  const int n_iso = report.n_isolated_nodes;
  std::ostringstream diag;
  diag << "cusps=" << n_cusps << " nodes=" << n_nodes
       << " isolated_nodes=" << n_iso
       << " rejected_cusps=" << report.cusp_detection.rejected.size();

  WT wt;
  bool ambiguous = false;
  if (n_cusps == 0) {
    bool hole;
    if (auto probe = interior_probe(report)) {
      const int count = ik_count_at(g, *probe);
      diag << " interior_probe=(" << probe->rho << "," << probe->z
           << ") iks=" << count;
      hole = count == 0;
    } else {
      hole = report.isolated_points.empty();
      diag << " interior_probe=none";
    }
    wt = hole ? WT::WT1 : (n_nodes == 0 ? WT::WT8 : WT::WT9);
  } else if (n_cusps == 2) {
    wt = n_nodes < 2 ? WT::WT5 : WT::WT6;
  } else if (n_cusps == 4) {
    const bool same_boundary =
        std::all_of(cusps.begin(), cusps.end(),
                    [](const CuspPoint& c) { return c.branch == Branch::S1; });
    if (!same_boundary)
      wt = WT::WT7;
    else if (n_nodes == 0)
      wt = WT::WT3;
    else if (n_iso > 0)
      wt = WT::WT4;
    else
      wt = WT::WT2;
  } else {
    ambiguous = true;
    wt = n_cusps < 2 ? WT::WT5 : WT::WT7;
  }

  Classification c;
  c.wt = wt;
  c.domain = domain_of(wt);
  c.n_cusps = n_cusps;
  c.n_nodes = n_nodes;
  c.n_isolated_nodes = n_iso;
  c.method = Method::Numeric;
  const auto expected = expected_counts(wt);
  c.boundary = ambiguous || expected.n_cusps != n_cusps ||
               expected.n_nodes != n_nodes;
  if (c.boundary) diag << " (counts do not match " << to_string(wt) << ")";
  c.diagnostics = diag.str();
  return c;
}

Classification classify_numeric(const Geometry& geom,
                                const NumericOptions& opts) {
  const Geometry g = geom.normalized();
  return classify_from_report(g, count_features(g, opts.trace));
}

Classification classify(const Geometry& geom, Method mode,
                        const NumericOptions& opts, const SurfaceAtlas& atlas,
                        double eps) {
  switch (mode) {
    case Method::Surfaces: return classify_by_surfaces(geom, eps, atlas);
    case Method::Numeric: return classify_numeric(geom, opts);
    case Method::Both: break;
  }
  const Classification s = classify_by_surfaces(geom, eps, atlas);
  const Classification n = classify_numeric(geom, opts);
  Classification c = s;
  c.method = Method::Both;
  c.n_cusps = n.n_cusps;
  c.n_nodes = n.n_nodes;
  c.n_isolated_nodes = n.n_isolated_nodes;
  c.boundary = s.boundary || n.boundary;
  const bool agree = s.domain == n.domain && s.wt == n.wt;
  c.agreement = agree ? Agreement::Agree : Agreement::Disagree;
  std::ostringstream os;
  if (!agree)
    os << "surfaces: domain " << s.domain << " " << to_string(s.wt)
       << "; numeric: domain " << n.domain << " " << to_string(n.wt) << "; ";
  os << n.diagnostics;
  if (!s.diagnostics.empty()) os << "; " << s.diagnostics;
  c.diagnostics = os.str();
  return c;
}

}  // namespace orthotopo
