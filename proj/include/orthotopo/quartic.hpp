#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace orthotopo {

/// Polynomial of degree <= 4 in a half-angle variable u, where
/// theta3 = offset + 2 atan(u).  With offset == 0 this is the usual
/// t = tan(theta3 / 2).  coeffs[k] multiplies u^k.
struct QuarticPoly {
  std::array<double, 5> coeffs{};
  double offset = 0.0;

  [[nodiscard]] double operator()(double u) const;
  [[nodiscard]] std::complex<double> operator()(std::complex<double> u) const;
  [[nodiscard]] double max_abs_coeff() const;
  /// Index of the highest non-zero coefficient, -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  /// k-th derivative (coefficients of higher powers are zero).
  [[nodiscard]] QuarticPoly derivative(int order = 1) const;
  /// The same zero set expressed in u' with theta3 = new_offset + 2 atan(u').
  /// Valid for any new_offset; the result is scaled so max |coeff| == 1.
  [[nodiscard]] QuarticPoly reexpressed(double new_offset) const;

  [[nodiscard]] double theta3_of(double u) const;
};

/// K^2 - 4 d2^2 (R - G^2) written with K and G as first-order trigonometric
/// polynomials in theta3:
///   K = k0 + kc cos(theta3) + ks sin(theta3)
///   G = g0 + gc cos(theta3) + gs sin(theta3)
struct IkConstraint {
  double k0 = 0, kc = 0, ks = 0;
  double g0 = 0, gc = 0, gs = 0;
  double d2 = 1;
  double radial_sq = 0;

  [[nodiscard]] double value(double theta3) const;
  /// Clears (1 + u^2)^2 after substituting theta3 = offset + 2 atan(u).
  [[nodiscard]] QuarticPoly quartic(double offset = 0.0) const;
};

struct Root {
  /// tan(theta3 / 2); +inf for theta3 == pi.
  double t = 0.0;
  double theta3 = 0.0;
  int multiplicity = 1;
};

struct RootPattern {
  std::vector<Root> roots;  // sorted by theta3
  double tol = 0.0;
  /// Every coefficient vanished; the constraint holds for all theta3.
  bool identically_zero = false;
  /// Offset of the representation the roots were extracted from.
  double offset_used = 0.0;

  [[nodiscard]] int total_multiplicity() const;
  [[nodiscard]] int max_multiplicity() const;
  /// Roots whose multiplicity is at least `m`.
  [[nodiscard]] int count_at_least(int m) const;
};

inline constexpr double kDefaultRootTol = 1e-7;

/// Complex roots of a polynomial given by ascending coefficients.  Leading
/// zero coefficients are dropped.  Newton-polished.
std::vector<std::complex<double>> complex_roots(std::span<const double> coeffs);

/// Real roots with multiplicities.
///
/// Roots are grouped so that the fewest clusters remain whose reconstructed
/// polynomial lead * prod (u - c_k)^m_k lies within relative backward error
/// `tol` of the input; real roots closer than tol (1 + |t|) are merged too.
/// Roots near theta3 = pi are recovered by re-expressing the polynomial under
/// a shifted half-angle.
RootPattern solve_roots(const QuarticPoly& poly, double tol = kDefaultRootTol);

/// Largest multiplicity among real roots within `angle_radius` of theta3.
int multiplicity_near(const RootPattern& pattern, double theta3,
                      double angle_radius);

}  // namespace orthotopo
