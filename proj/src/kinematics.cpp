#include "orthotopo/kinematics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace orthotopo {

Geometry::Geometry(double d2_, double d3_, double d4_, double r2_)
    : d2(d2_), d3(d3_), d4(d4_), r2(r2_) {
  validate();
}

void Geometry::validate() const {
  const std::array<std::pair<const char*, double>, 4> fields{
      {{"d2", d2}, {"d3", d3}, {"d4", d4}, {"r2", r2}}};
  for (const auto& [name, v] : fields) {
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument(std::string("geometry length ") + name +
                                  " must be finite and > 0");
  }
}

Geometry Geometry::normalized() const { return scaled(1.0 / d2); }

Geometry Geometry::scaled(double factor) const {
  Geometry g = *this;
  g.d2 *= factor;
  g.d3 *= factor;
  g.d4 *= factor;
  g.r2 *= factor;
  return g;
}

HalfSectionPoint HalfSectionPoint::from(const CartesianPoint& p) {
  return {std::hypot(p.x, p.y), p.z};
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a + std::numbers::pi, two_pi);
  if (r < 0.0) r += two_pi;
  r -= std::numbers::pi;
  return r >= std::numbers::pi ? -std::numbers::pi : r;
}

JointConfig wrapped(const JointConfig& q) {
  return {wrap_angle(q.theta1), wrap_angle(q.theta2), wrap_angle(q.theta3)};
}

double angle_diff(double a, double b) { return wrap_angle(a - b); }

CartesianPoint forward_kinematics(const Geometry& g, const JointConfig& q) {
  const double c1 = std::cos(q.theta1), s1 = std::sin(q.theta1);
  const double c2 = std::cos(q.theta2), s2 = std::sin(q.theta2);
  const double c3 = std::cos(q.theta3), s3 = std::sin(q.theta3);
  const double f = g.d3 + c3 * g.d4;
  const double h = s3 * g.d4 + g.r2;
  const double reach = g.d2 + c2 * f;
  return {c1 * reach - s1 * h, s1 * reach + c1 * h, -s2 * f};
}

double jacobian_det_closed(const Geometry& g, const JointConfig& q) {
  const double c2 = std::cos(q.theta2);
  const double c3 = std::cos(q.theta3), s3 = std::sin(q.theta3);
  return (g.d3 + c3 * g.d4) * (s3 * g.d2 + c2 * (s3 * g.d3 - c3 * g.r2));
}

double jacobian_det_numeric(const Geometry& g, const JointConfig& q,
                            double step) {
  std::array<std::array<double, 3>, 3> jac{};
  for (int k = 0; k < 3; ++k) {
    JointConfig lo = q, hi = q;
    double* plo = k == 0 ? &lo.theta1 : (k == 1 ? &lo.theta2 : &lo.theta3);
    double* phi = k == 0 ? &hi.theta1 : (k == 1 ? &hi.theta2 : &hi.theta3);
    *plo -= step;
    *phi += step;
    const auto a = forward_kinematics(g, lo);
    const auto b = forward_kinematics(g, hi);
    jac[0][k] = (b.x - a.x) / (2.0 * step);
    jac[1][k] = (b.y - a.y) / (2.0 * step);
    jac[2][k] = (b.z - a.z) / (2.0 * step);
  }
  return jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
         jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
         jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
}

IkConstraint ik_constraint(const Geometry& g, double radial_sq, double z) {
  // F^2 + G^2 = d3^2 + d4^2 + r2^2 + 2 d3 d4 c3 + 2 r2 d4 s3
  IkConstraint c;
  c.k0 = g.d3 * g.d3 + g.d4 * g.d4 + g.r2 * g.r2 - g.d2 * g.d2 - z * z -
         radial_sq;
  c.kc = 2.0 * g.d3 * g.d4;
  c.ks = 2.0 * g.r2 * g.d4;
  c.g0 = g.r2;
  c.gc = 0.0;
  c.gs = g.d4;
  c.d2 = g.d2;
  c.radial_sq = radial_sq;
  return c;
}

QuarticPoly ik_quartic(const Geometry& g, double radial_sq, double z) {
  return ik_constraint(g, radial_sq, z).quartic(0.0);
}

IkResult inverse_kinematics(const Geometry& g, const CartesianPoint& p,
                            double tol) {
  IkResult result;
  const double radial_sq = p.x * p.x + p.y * p.y;
  result.roots = solve_roots(ik_quartic(g, radial_sq, p.z), tol);
  if (result.roots.identically_zero) {
    result.continuum = true;
    return result;
  }

  const double scale = g.scale();
  const double scale_sq = scale * scale;
  const double azimuth = std::atan2(p.y, p.x);

  for (const Root& root : result.roots.roots) {
    const double c3 = std::cos(root.theta3), s3 = std::sin(root.theta3);
    const double f = g.d3 + c3 * g.d4;
    const double h = s3 * g.d4 + g.r2;
    if (std::abs(f) <= 1e-9 * scale) {
      result.continuum = true;
      continue;
    }
    double disc = radial_sq - h * h;
    if (disc < 0.0) {
      if (disc < -1e-9 * scale_sq) {
        ++result.rejected_roots;
        continue;
      }
      disc = 0.0;
    }
    const double k = f * f + h * h - radial_sq - g.d2 * g.d2 - p.z * p.z;
    const double root_disc = std::sqrt(disc);
    const double s2 = -p.z / f;

    double best_c2 = 0.0;
    double best_err = std::numeric_limits<double>::infinity();
    auto consider = [&](double sigma) {
      const double c2 = (sigma * root_disc - g.d2) / f;
      const double err = std::abs(c2 * c2 + s2 * s2 - 1.0);
      if (err < best_err) {
        best_err = err;
        best_c2 = c2;
      }
    };
    if (std::abs(k) <= 1e-6 * scale_sq) {
      consider(1.0);
      consider(-1.0);
    } else {
      consider(k > 0.0 ? -1.0 : 1.0);
    }
    if (best_err > 1e-6) {
      ++result.rejected_roots;
      continue;
    }
    const double theta2 = std::atan2(s2, best_c2);
    const double reach = g.d2 + std::cos(theta2) * f;
    const double theta1 = azimuth - std::atan2(h, reach);
    result.solutions.push_back(wrapped({theta1, theta2, root.theta3}));
  }
  return result;
}

}  // namespace orthotopo
