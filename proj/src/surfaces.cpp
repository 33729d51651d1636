#include "orthotopo/surfaces.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace orthotopo {

namespace {

void require_positive(double d3, double r2) {
  if (!(d3 > 0.0) || !(r2 > 0.0) || !std::isfinite(d3) || !std::isfinite(r2))
    throw std::invalid_argument("surface evaluation needs d3 > 0 and r2 > 0");
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::string_view to_string(SurfaceId id) {
  switch (id) {
    case SurfaceId::C1: return "C1";
    case SurfaceId::C2: return "C2";
    case SurfaceId::C3: return "C3";
    case SurfaceId::C4: return "C4";
    case SurfaceId::E1: return "E1";
    case SurfaceId::E2: return "E2";
    case SurfaceId::E3: return "E3";
  }
  return "?";
}

std::optional<SurfaceId> surface_from_string(std::string_view name) {
  for (SurfaceId id : kAllSurfaces)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

AuxAB aux_ab(double d3, double r2) {
  return {std::hypot(d3 + 1.0, r2), std::hypot(d3 - 1.0, r2)};
}

bool surface_applicable(SurfaceId id, double d3) {
  if (id == SurfaceId::C3) return d3 > 1.0;
  if (id == SurfaceId::C4) return d3 < 1.0;
  return true;
}

double surface_value(SurfaceId id, double d3, double r2) {
  require_positive(d3, r2);
  if (!surface_applicable(id, d3))
    throw std::domain_error(std::string(to_string(id)) +
                            " is not defined at d3 = " + std::to_string(d3));
  const auto [a, b] = aux_ab(d3, r2);
  switch (id) {
    case SurfaceId::C1: {
      const double s = d3 * d3 + r2 * r2;
      const double inner = 0.5 * (s - (s * s - d3 * d3 + r2 * r2) / (a * b));
      return std::sqrt(std::max(inner, 0.0));
    }
    case SurfaceId::C2: return d3 * a / (1.0 + d3);
    case SurfaceId::C3: return d3 * b / (d3 - 1.0);
    case SurfaceId::C4: return d3 * b / (1.0 - d3);
    case SurfaceId::E1: return 0.5 * (a - b);
    case SurfaceId::E2: return d3;
    case SurfaceId::E3: return 0.5 * (a + b);
  }
  throw std::invalid_argument("unknown surface");
}

bool SurfaceAtlas::is_identity() const {
  for (double f : factor)
    if (f != 1.0) return false;
  return true;
}

double SurfaceAtlas::value(SurfaceId id, double d3, double r2) const {
  return factor[static_cast<std::size_t>(id)] * surface_value(id, d3, r2);
}

double cr_residual(int k, double d3, double d4, double r2) {
  const double d3_2 = d3 * d3, d3_3 = d3_2 * d3, d3_4 = d3_2 * d3_2,
               d3_6 = d3_4 * d3_2;
  const double d4_2 = d4 * d4, d4_4 = d4_2 * d4_2;
  const double r2_2 = r2 * r2, r2_4 = r2_2 * r2_2, r2_6 = r2_4 * r2_2;
  switch (k) {
    case 5: return -d3 + d4 * r2_2 + d4;
    case 6: return d3_2 - d4_2 + r2_2;
    case 7:
      return d4_2 * d3_6 - d4_4 * d3_4 + 3 * d4_2 * d3_4 * r2_2 -
             2 * d4_2 * d3_4 + 2 * d4_4 * d3_2 - 2 * d4_4 * d3_2 * r2_2 +
             d4_2 * d3_2 + 3 * d4_2 * d3_2 * r2_4 - d3_2 * r2_2 -
             2 * d4_4 * r2_2 - d4_4 * r2_4 - d4_4 + d4_2 * r2_6 +
             d4_2 * r2_2 + 2 * d4_2 * r2_4;
    case 8:
      return d3_2 * r2_2 + d3_2 - 2 * d3_3 + d3_4 - d4_2 + 2 * d3 * d4_2 -
             d3_2 * d4_2;
    case 9:
      return d3_2 * r2_2 + d3_2 + 2 * d3_3 + d3_4 - d4_2 - 2 * d3 * d4_2 -
             d3_2 * d4_2;
    default:
      throw std::invalid_argument("condition index must be in 5..9, got " +
                                  std::to_string(k));
  }
}

double cr_scale(int k, double d3, double d4, double r2) {
  const double d3_2 = d3 * d3, d3_3 = d3_2 * d3, d3_4 = d3_2 * d3_2,
               d3_6 = d3_4 * d3_2;
  const double d4_2 = d4 * d4, d4_4 = d4_2 * d4_2;
  const double r2_2 = r2 * r2, r2_4 = r2_2 * r2_2, r2_6 = r2_4 * r2_2;
  switch (k) {
    case 5: return d3 + d4 * r2_2 + d4;
    case 6: return d3_2 + d4_2 + r2_2;
    case 7:
      return d4_2 * d3_6 + d4_4 * d3_4 + 3 * d4_2 * d3_4 * r2_2 +
             2 * d4_2 * d3_4 + 2 * d4_4 * d3_2 + 2 * d4_4 * d3_2 * r2_2 +
             d4_2 * d3_2 + 3 * d4_2 * d3_2 * r2_4 + d3_2 * r2_2 +
             2 * d4_4 * r2_2 + d4_4 * r2_4 + d4_4 + d4_2 * r2_6 +
             d4_2 * r2_2 + 2 * d4_2 * r2_4;
    case 8:
    case 9:
      return d3_2 * r2_2 + d3_2 + 2 * d3_3 + d3_4 + d4_2 + 2 * d3 * d4_2 +
             d3_2 * d4_2;
    default:
      throw std::invalid_argument("condition index must be in 5..9, got " +
                                  std::to_string(k));
  }
}

Eq7Quadratic eq7_quadratic(double d3, double r2) {
  const double d3_2 = d3 * d3, d3_4 = d3_2 * d3_2, d3_6 = d3_4 * d3_2;
  const double r2_2 = r2 * r2, r2_4 = r2_2 * r2_2, r2_6 = r2_4 * r2_2;
  Eq7Quadratic q;
  q.a = -(d3_4 - 2 * d3_2 + 2 * d3_2 * r2_2 + 2 * r2_2 + r2_4 + 1.0);
  q.b = d3_6 + 3 * d3_4 * r2_2 - 2 * d3_4 + d3_2 + 3 * d3_2 * r2_4 + r2_6 +
        r2_2 + 2 * r2_4;
  q.c = -d3_2 * r2_2;
  return q;
}

BranchReport branch_report(double d3, double r2, double match_tol) {
  require_positive(d3, r2);
  BranchReport rep;
  rep.d3 = d3;
  rep.r2 = r2;

  // a < 0 and c < 0, so both u-roots are positive when real.
  const auto q = eq7_quadratic(d3, r2);
  const double disc = std::max(q.b * q.b - 4.0 * q.a * q.c, 0.0);
  const double big = (-q.b - std::copysign(std::sqrt(disc), q.b)) / 2.0;
  double u1 = big / q.a;
  double u2 = q.c / big;
  if (u1 > u2) std::swap(u1, u2);
  rep.eq7_roots = {std::sqrt(u1), std::sqrt(u2)};
  // C1 is usually the small root, but the large one once
  // (d3^2 + r2^2)^2 + r2^2 < d3^2; the other root is the non-separating one.
  const double c1 = surface_value(SurfaceId::C1, d3, r2);
  rep.eq7_small_is_c1 = close(rep.eq7_roots[0], c1, match_tol);
  rep.eq7_large_is_c1 = !rep.eq7_small_is_c1 && close(rep.eq7_roots[1], c1, match_tol);
  rep.eq7_non_separating =
      rep.eq7_large_is_c1 ? rep.eq7_roots[0] : rep.eq7_roots[1];

  // d4^2 (d3 - 1)^2 = d3^2 (r2^2 + (d3 - 1)^2)
  if (d3 != 1.0) {
    const auto [a, b] = aux_ab(d3, r2);
    rep.eq8_root = d3 * b / std::abs(d3 - 1.0);
    const SurfaceId id = d3 > 1.0 ? SurfaceId::C3 : SurfaceId::C4;
    if (close(*rep.eq8_root, surface_value(id, d3, r2), match_tol))
      rep.eq8_matches = id;
  }

  // d4^2 (d3 + 1)^2 = d3^2 (r2^2 + (d3 + 1)^2)
  const double num9 = d3 * d3 * (r2 * r2 + (d3 + 1.0) * (d3 + 1.0));
  rep.eq9_root = std::sqrt(num9) / (d3 + 1.0);
  rep.eq9_is_c2 =
      close(rep.eq9_root, surface_value(SurfaceId::C2, d3, r2), match_tol);

  rep.eq5_locus = d3 / (1.0 + r2 * r2);
  rep.eq6_locus = std::sqrt(d3 * d3 + r2 * r2);
  return rep;
}

}  // namespace orthotopo
