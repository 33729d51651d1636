#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "orthotopo/kinematics.hpp"
#include "orthotopo/singularity.hpp"
#include "orthotopo/surfaces.hpp"

namespace orthotopo {

enum class WorkspaceTopology { WT1 = 1, WT2, WT3, WT4, WT5, WT6, WT7, WT8, WT9 };

std::string_view to_string(WorkspaceTopology wt);
std::optional<WorkspaceTopology> topology_from_string(std::string_view name);

/// Cusp domain (1..5) containing a workspace topology.
int domain_of(WorkspaceTopology wt);

/// Cusp and node counts of each topology, as measured by the numerical
/// oracle.  Nodes at isolated singular points are included.
FeatureCount expected_counts(WorkspaceTopology wt);

/// Cusps implied by a cusp domain (1..5).
int cusps_of_domain(int domain);

enum class Method { Surfaces, Numeric, Both };
enum class Agreement { Agree, Disagree, NotApplicable };

std::string_view to_string(Method m);
std::string_view to_string(Agreement a);
std::optional<Method> method_from_string(std::string_view name);

struct Classification {
  int domain = 0;
  WorkspaceTopology wt = WorkspaceTopology::WT1;
  int n_cusps = 0;
  int n_nodes = 0;
  /// Nodes that coincide with isolated singular points (part of n_nodes).
  int n_isolated_nodes = 0;
  Method method = Method::Surfaces;
  bool boundary = false;
  Agreement agreement = Agreement::NotApplicable;
  std::string diagnostics;
};

struct NumericOptions {
  TraceOptions trace{};
};

struct BoundaryDistance {
  SurfaceId surface = SurfaceId::C1;
  double distance = 0.0;
};

/// Smallest |d4 - surface| over the surfaces applicable at the normalized d3.
BoundaryDistance nearest_boundary_distance(const Geometry& geom,
                                           const SurfaceAtlas& atlas = {});

/// Reads the domain and topology off the closed-form surfaces.
///
/// At fixed (d3, r2):
///   domain 1: d4 < C1
///   domain 2: C1 < d4 < C2     WT2 below E1, WT3 up to E2 (= d3), WT4 above
///   domain 3: C2 < d4 < C3|C4  WT5 below E3, WT6 above
///   domain 4: d4 > C3 (d3 > 1) WT7
///   domain 5: d4 > C4 (d3 < 1) WT8 below E3, WT9 above
/// A point on a surface is assigned to the cell above it.
Classification classify_by_surfaces(const Geometry& geom, double eps = 1e-6,
                                    const SurfaceAtlas& atlas = {});

/// Reads the domain and topology off traced singular curves.
Classification classify_numeric(const Geometry& geom,
                                const NumericOptions& opts = {});

/// Same, reusing an existing trace of the normalized geometry.
Classification classify_from_report(const Geometry& normalized_geom,
                                    const FeatureReport& report);

Classification classify(const Geometry& geom, Method mode,
                        const NumericOptions& opts = {},
                        const SurfaceAtlas& atlas = {}, double eps = 1e-6);

}  // namespace orthotopo
