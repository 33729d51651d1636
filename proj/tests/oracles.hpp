#pragma once

// Test-side reference computations, written independently of the library.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 mul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Modified DH: Rot_x(alpha) Trans_x(a) Rot_z(theta) Trans_z(r).
inline Mat4 dh(double a, double alpha, double r, double theta) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double ct = std::cos(theta), st = std::sin(theta);
  return {{{ct, -st, 0.0, a},
           {ca * st, ca * ct, -sa, -r * sa},
           {sa * st, sa * ct, ca, r * ca},
           {0.0, 0.0, 0.0, 1.0}}};
}

struct Point {
  double x, y, z;
};

// End point of the orthogonal 3R chain as a product of elementary transforms.
inline Point fk(double d2, double d3, double d4, double r2, double q1,
                double q2, double q3) {
  constexpr double h = std::numbers::pi / 2.0;
  Mat4 t = mul(dh(0.0, 0.0, 0.0, q1), dh(d2, -h, r2, q2));
  t = mul(t, dh(d3, h, 0.0, q3));
  t = mul(t, dh(d4, 0.0, 0.0, 0.0));
  return {t[0][3], t[1][3], t[2][3]};
}

// Jacobian determinant of fk by central differences (theta1 = 0).
inline double det_fd(double d2, double d3, double d4, double r2, double q2,
                     double q3, double h = 1e-6) {
  double j[3][3];
  const double q[3] = {0.0, q2, q3};
  for (int c = 0; c < 3; ++c) {
    double qp[3] = {q[0], q[1], q[2]}, qm[3] = {q[0], q[1], q[2]};
    qp[c] += h;
    qm[c] -= h;
    const Point a = fk(d2, d3, d4, r2, qp[0], qp[1], qp[2]);
    const Point b = fk(d2, d3, d4, r2, qm[0], qm[1], qm[2]);
    j[0][c] = (a.x - b.x) / (2 * h);
    j[1][c] = (a.y - b.y) / (2 * h);
    j[2][c] = (a.z - b.z) / (2 * h);
  }
  return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
         j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
         j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

// Number of joint configurations reaching a half-section point, found by
// scanning theta3 and solving for (c2, s2) directly instead of through the
// tangent half-angle polynomial.  Over each theta3 interval where the radial
// equation is solvable, the two square-root branches join at the interval
// ends; walking one branch forward and the other back gives a closed loop on
// which the residual c2^2 + s2^2 - 1 is continuous, and its sign changes are
// the solutions.
inline int ik_count(double d2, double d3, double d4, double r2, double rho,
                    double z, int n = 200000) {
  std::vector<double> minus(n), plus(n);
  std::vector<char> ok(n);
  for (int k = 0; k < n; ++k) {
    const double t3 = -std::numbers::pi + 2.0 * std::numbers::pi * k / n;
    const double f = d3 + std::cos(t3) * d4;
    const double g = r2 + std::sin(t3) * d4;
    const double w = rho * rho - g * g;
    ok[k] = w >= 0.0 && std::abs(f) > 1e-12;
    if (!ok[k]) continue;
    const double s2 = -z / f;
    const double cm = (-std::sqrt(w) - d2) / f;
    const double cp = (std::sqrt(w) - d2) / f;
    minus[k] = cm * cm + s2 * s2 - 1.0;
    plus[k] = cp * cp + s2 * s2 - 1.0;
  }
  auto changes = [](const std::vector<double>& seq) {
    int c = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      c += (seq[i] < 0.0) != (seq[(i + 1) % seq.size()] < 0.0);
    return c;
  };
  int start = -1;
  for (int k = 0; k < n; ++k)
    if (!ok[k]) {
      start = k;
      break;
    }
  if (start < 0) return changes(minus) + changes(plus);
  int count = 0;
  std::vector<double> loop;
  for (int i = 1; i <= n; ++i) {
    const int k = (start + i) % n;
    if (ok[k]) {
      loop.push_back(minus[k]);
      continue;
    }
    if (!loop.empty()) {
      // Append the plus branch of the same run in reverse.
      const int len = static_cast<int>(loop.size());
      for (int j = 0; j < len; ++j)
        loop.push_back(plus[((k - 1 - j) % n + n) % n]);
      count += changes(loop);
      loop.clear();
    }
  }
  return count;
}

// Even-odd rule.
inline bool inside(const std::vector<std::array<double, 2>>& poly, double x,
                   double y) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a[1] > y) != (b[1] > y) &&
        x < (b[0] - a[0]) * (y - a[1]) / (b[1] - a[1]) + a[0])
      in = !in;
  }
  return in;
}

// Plain bisection on a bracketing interval.
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Condition whose small d4 root is the four-equal-roots surface, typed in
// term by term as a polynomial in (d3, d4, r2).
inline double four_equal_roots_condition(double d3, double d4, double r2) {
  const double a = d3, b = d4, c = r2;
  return b * b * std::pow(a, 6) - std::pow(b, 4) * std::pow(a, 4) +
         3 * b * b * std::pow(a, 4) * c * c - 2 * b * b * std::pow(a, 4) +
         2 * std::pow(b, 4) * a * a - 2 * std::pow(b, 4) * a * a * c * c +
         b * b * a * a + 3 * b * b * a * a * std::pow(c, 4) - a * a * c * c -
         2 * std::pow(b, 4) * c * c - std::pow(b, 4) * std::pow(c, 4) -
         std::pow(b, 4) + b * b * std::pow(c, 6) + b * b * c * c +
         2 * b * b * std::pow(c, 4);
}

}  // namespace oracle
