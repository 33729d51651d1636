#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "orthotopo/kinematics.hpp"

namespace orthotopo {

/// Joint-space singular branches.  S1 maps to the internal boundary WS1,
/// S2 to the external boundary WS2.  The two lines theta3 = +-acos(-d3/d4)
/// exist only when d3 <= d4.
enum class Branch { S1, S2, LinePlus, LineMinus };

std::string_view to_string(Branch b);

/// One singular branch sampled along its parameter.
///
/// S-branches are closed loops in the (theta2, theta3) torus.  A loop lives
/// over a theta3 interval [center - half_width, center + half_width] on which
/// |c2| <= 1; it is parametrized as
///   theta3 = center + half_width * cos(phi)
///   theta2 = sign(sin(phi)) * acos(c2(theta3))
/// which stays smooth through the folds at |c2| = 1.  Lines are parametrized
/// by theta2 directly.
struct SingularCurve {
  Branch branch = Branch::S1;
  std::vector<double> param;
  std::vector<double> theta2;
  std::vector<double> theta3;
  std::vector<HalfSectionPoint> image;

  double theta3_center = 0.0;
  double theta3_half_width = 0.0;

  [[nodiscard]] bool is_line() const {
    return branch == Branch::LinePlus || branch == Branch::LineMinus;
  }
  /// (theta2, theta3) at an arbitrary parameter value.
  [[nodiscard]] std::pair<double, double> joint_at(const Geometry& geom,
                                                   double param) const;
  [[nodiscard]] HalfSectionPoint image_at(const Geometry& geom,
                                          double param) const;
};

struct CuspPoint {
  HalfSectionPoint location;
  double theta2 = 0.0;
  double theta3 = 0.0;
  Branch branch = Branch::S1;
  double param = 0.0;
  /// Multiplicity of the IK root at theta3 for the refined point.
  int multiplicity = 0;
};

struct NodePoint {
  HalfSectionPoint location;
  std::array<std::pair<double, double>, 2> preimages{};  // (theta2, theta3)
  std::array<Branch, 2> branches{};
  /// Coincides with an isolated singular point (end point on the second
  /// joint axis, infinitely many solutions).
  bool at_isolated_point = false;
  /// Two distinct double roots found in the IK quartic, or isolated point.
  bool confirmed = false;
};

struct FeatureCount {
  int n_cusps = 0;
  int n_nodes = 0;
};

struct TraceOptions {
  int n_samples = 2000;
  /// Backward-error tolerance used when confirming root multiplicities.
  double multiplicity_tol = 1e-8;
  /// Nodes closer than this to a cusp are dropped.
  double cusp_exclusion = 1e-6;
  /// Nodes and isolated points closer than this are merged.
  double merge_radius = 1e-6;
};

struct CuspDetection {
  std::vector<CuspPoint> cusps;
  /// Tangent reversals without a confirming triple root.
  std::vector<CuspPoint> rejected;
};

struct FeatureReport {
  std::vector<SingularCurve> curves;
  std::vector<HalfSectionPoint> isolated_points;
  CuspDetection cusp_detection;
  std::vector<NodePoint> nodes;
  FeatureCount count;
  int n_isolated_nodes = 0;

  [[nodiscard]] const std::vector<CuspPoint>& cusps() const {
    return cusp_detection.cusps;
  }
};

/// theta2 values on the second determinant factor for a given theta3.
std::vector<double> singular_theta2(const Geometry& geom, double theta3);

/// S-loops (labelled S1/S2 by their image's radial extent) followed by the
/// singular lines when d3 <= d4.
std::vector<SingularCurve> trace_singular_set(const Geometry& geom,
                                              int n_samples = 2000);

std::vector<HalfSectionPoint> workspace_image(const Geometry& geom,
                                              const SingularCurve& curve);

/// Images of the singular lines: empty when d3 > d4, one point when d3 == d4.
std::vector<HalfSectionPoint> isolated_singular_points(const Geometry& geom);

CuspDetection detect_cusps(const Geometry& geom,
                           const std::vector<SingularCurve>& curves,
                           const TraceOptions& opts = {});

std::vector<NodePoint> detect_nodes(const Geometry& geom,
                                    const std::vector<SingularCurve>& curves,
                                    const std::vector<CuspPoint>& cusps,
                                    const TraceOptions& opts = {});

FeatureReport count_features(const Geometry& geom,
                             const TraceOptions& opts = {});

/// Connected components of {det J != 0} on a grid_n x grid_n sampling of the
/// (theta2, theta3) torus.
int aspect_count(const Geometry& geom, int grid_n = 512);

/// Point well inside the internal boundary, away from all singular curves.
std::optional<HalfSectionPoint> interior_probe(const FeatureReport& report);

/// Point inside the external boundary but outside the internal one.
std::optional<HalfSectionPoint> exterior_probe(const FeatureReport& report);

/// Number of IK solutions at a half-section point (theta1 is irrelevant).
int ik_count_at(const Geometry& geom, const HalfSectionPoint& p);

}  // namespace orthotopo
