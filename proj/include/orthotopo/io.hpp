#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orthotopo/classifier.hpp"
#include "orthotopo/kinematics.hpp"
#include "orthotopo/singularity.hpp"
#include "orthotopo/sweep.hpp"

namespace orthotopo::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSweepCsvHeader =
    "d3,d4,r2,domain,wt,n_cusps,n_nodes,boundary";
inline constexpr std::string_view kBoundaryCsvHeader =
    "branch,theta2,theta3,rho,z";

/// Shortest decimal that parses back to the same double; -0 prints as 0.
std::string format_double(double v);

/// Nine significant digits (%.9g); -0 prints as 0.
std::string format_sig9(double v);

/// Fill colour of a topology in sweep figures (Tableau 10 without grey).
std::string_view palette_color(WorkspaceTopology wt);

void write_sweep_csv(std::ostream& os, const PartitionRaster& raster);

/// One row per traced sample, curves in trace order.
void write_boundary_csv(std::ostream& os,
                        const std::vector<SingularCurve>& curves);

/// Half-section figure: WS1/WS2 polylines, cusps as circles (class "cusp"),
/// nodes as crosses (class "node"), isolated points as squares.
std::string boundary_svg(const Geometry& geom, const FeatureReport& report);

/// Partition raster coloured by topology with the surface curves and a
/// legend on top.
std::string sweep_svg(const PartitionRaster& raster,
                      const std::vector<OverlayCurve>& overlay);

Json classification_json(const Geometry& geom, const Classification& c);
Json fk_json(const Geometry& geom, const JointConfig& q,
             const CartesianPoint& p);
Json ik_json(const Geometry& geom, const CartesianPoint& p,
             const IkResult& result);
Json region_stats_json(const PartitionRaster& raster, const RegionStats& st);

/// Number value with -0 folded to 0.
Json number(double v);

}  // namespace orthotopo::io
