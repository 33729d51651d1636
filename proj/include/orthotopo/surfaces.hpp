#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace orthotopo {

/// Separating surfaces d4 = f(d3, r2) in the normalized (d2 = 1) parameter
/// space.  C1..C4 bound the cusp domains, E1..E3 the node sub-domains.
enum class SurfaceId { C1, C2, C3, C4, E1, E2, E3 };

inline constexpr std::array<SurfaceId, 7> kAllSurfaces{
    SurfaceId::C1, SurfaceId::C2, SurfaceId::C3, SurfaceId::C4,
    SurfaceId::E1, SurfaceId::E2, SurfaceId::E3};

std::string_view to_string(SurfaceId id);
std::optional<SurfaceId> surface_from_string(std::string_view name);

struct AuxAB {
  double a = 0.0;  // sqrt((d3 + 1)^2 + r2^2)
  double b = 0.0;  // sqrt((d3 - 1)^2 + r2^2)
};

AuxAB aux_ab(double d3, double r2);

/// C3 exists only for d3 > 1, C4 only for d3 < 1; the rest everywhere.
bool surface_applicable(SurfaceId id, double d3);

/// Per-surface multiplicative perturbation.  The identity atlas reproduces
/// the closed forms; anything else is a deliberately broken atlas used to
/// check that the verification suites catch a wrong constant.
struct SurfaceAtlas {
  std::array<double, 7> factor{1, 1, 1, 1, 1, 1, 1};

  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] double value(SurfaceId id, double d3, double r2) const;
};

/// Threshold d4 on surface `id`.  Throws std::domain_error outside the
/// surface's d3 range and std::invalid_argument for non-positive inputs.
double surface_value(SurfaceId id, double d3, double r2);

/// Left-hand side of the five algebraic conditions (k = 5..9) bounding the
/// cusp-count cells.  Throws std::invalid_argument for other k.
double cr_residual(int k, double d3, double d4, double r2);

/// Sum of |monomial| values of the same polynomial; the natural scale for a
/// relative residual.
double cr_scale(int k, double d3, double d4, double r2);

/// Coefficients of condition 7 viewed as a*u^2 + b*u + c with u = d4^2.
struct Eq7Quadratic {
  double a = 0.0, b = 0.0, c = 0.0;
};
Eq7Quadratic eq7_quadratic(double d3, double r2);

struct BranchReport {
  double d3 = 0.0, r2 = 0.0;

  /// Positive d4 roots of condition 7, ascending.  One of them is C1: the
  /// smaller one unless (d3^2 + r2^2)^2 + r2^2 < d3^2.
  std::array<double, 2> eq7_roots{};
  bool eq7_small_is_c1 = false;
  bool eq7_large_is_c1 = false;
  /// The root that is not C1; it does not separate workspace topologies.
  double eq7_non_separating = 0.0;

  /// Positive d4 root of condition 8 (absent at d3 == 1); equals C3 when
  /// d3 > 1 and C4 when d3 < 1.
  std::optional<double> eq8_root;
  std::optional<SurfaceId> eq8_matches;

  /// Positive d4 root of condition 9; equals C2.
  double eq9_root = 0.0;
  bool eq9_is_c2 = false;

  /// Loci of conditions 5 and 6 solved for d4; neither separates.
  double eq5_locus = 0.0;  // d4 = d3 / (1 + r2^2)
  double eq6_locus = 0.0;  // d4 = sqrt(d3^2 + r2^2)
};

/// Solves conditions 5..9 for d4 at fixed (d3, r2) and matches each branch to
/// the closed-form surfaces (relative tolerance `match_tol`).
BranchReport branch_report(double d3, double r2, double match_tol = 1e-9);

}  // namespace orthotopo
