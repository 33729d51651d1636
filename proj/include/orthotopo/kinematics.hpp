#pragma once

#include <vector>

#include "orthotopo/quartic.hpp"

namespace orthotopo {

/// DH lengths of one member of the family of orthogonal 3R positioners.
///
/// The twist angles are fixed at alpha2 = -90 deg, alpha3 = +90 deg and the
/// last joint offset r3 is zero, so only four lengths remain.  All four must
/// be strictly positive.
struct Geometry {
  double d2 = 1.0;
  double d3 = 0.0;
  double d4 = 0.0;
  double r2 = 0.0;

  Geometry() = default;
  Geometry(double d2_, double d3_, double d4_, double r2_);

  /// Throws std::invalid_argument unless every length is finite and > 0.
  void validate() const;

  /// Same manipulator scaled so that d2 == 1.
  [[nodiscard]] Geometry normalized() const;
  [[nodiscard]] Geometry scaled(double factor) const;

  /// Characteristic length used to make tolerances scale-free.
  [[nodiscard]] double scale() const { return d2 + d3 + d4 + r2; }
};

struct JointConfig {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
};

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Point of the (rho, z) half cross-section, rho >= 0.
struct HalfSectionPoint {
  double rho = 0.0;
  double z = 0.0;

  static HalfSectionPoint from(const CartesianPoint& p);
};

/// Wraps an angle into [-pi, pi).
double wrap_angle(double a);
JointConfig wrapped(const JointConfig& q);

/// Signed distance between two angles, in [-pi, pi).
double angle_diff(double a, double b);

CartesianPoint forward_kinematics(const Geometry& geom, const JointConfig& q);

/// (d3 + c3 d4)(s3 d2 + c2 (s3 d3 - c3 r2)); independent of theta1.
double jacobian_det_closed(const Geometry& geom, const JointConfig& q);

/// Determinant of the central-difference Jacobian of forward_kinematics.
/// Equals d4 * jacobian_det_closed for this family.
double jacobian_det_numeric(const Geometry& geom, const JointConfig& q,
                            double step = 1e-6);

/// Inverse-kinematics polynomial in t = tan(theta3 / 2) for a target with
/// squared radial distance `radial_sq` and height `z`.
QuarticPoly ik_quartic(const Geometry& geom, double radial_sq, double z);

/// Trigonometric form of the same constraint, usable under any half-angle
/// offset.  ik_quartic(g, R, z) == ik_constraint(g, R, z).quartic(0).
IkConstraint ik_constraint(const Geometry& geom, double radial_sq, double z);

struct IkResult {
  std::vector<JointConfig> solutions;
  RootPattern roots;
  /// A root put the end point on the second joint axis (F = 0): theta2 is
  /// free there and the point has infinitely many solutions.
  bool continuum = false;
  /// Real roots discarded because no consistent (c2, s2) exists.
  int rejected_roots = 0;
};

/// All solutions reaching `p`, one per distinct real root of the quartic.
/// `tol` is the relative backward error used for root clustering.
IkResult inverse_kinematics(const Geometry& geom, const CartesianPoint& p,
                            double tol = 1e-10);

}  // namespace orthotopo
