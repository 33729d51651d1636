#include "orthotopo/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace orthotopo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

HalfSectionPoint half_section(const Geometry& g, double theta2, double theta3) {
  const double f = g.d3 + std::cos(theta3) * g.d4;
  const double h = std::sin(theta3) * g.d4 + g.r2;
  return {std::hypot(g.d2 + std::cos(theta2) * f, h), -std::sin(theta2) * f};
}

double c2_on_loop(const Geometry& g, double theta3) {
  const double s3 = std::sin(theta3), c3 = std::cos(theta3);
  return std::clamp(s3 * g.d2 / (c3 * g.r2 - s3 * g.d3), -1.0, 1.0);
}

double dist(const HalfSectionPoint& a, const HalfSectionPoint& b) {
  return std::hypot(a.rho - b.rho, a.z - b.z);
}

struct Vec2 {
  double x, y;
};

Vec2 image_velocity(const Geometry& g, const SingularCurve& c, double param) {
  constexpr double h = 1e-7;
  const auto a = c.image_at(g, param - h);
  const auto b = c.image_at(g, param + h);
  return {(b.rho - a.rho) / (2 * h), (b.z - a.z) / (2 * h)};
}

SingularCurve make_loop(const Geometry& g, double lo, double hi, int n) {
  SingularCurve c;
  c.theta3_center = 0.5 * (lo + hi);
  c.theta3_half_width = 0.5 * (hi - lo);
  c.param.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phi = kTwoPi * k / n;
    const auto [t2, t3] = c.joint_at(g, phi);
    c.param.push_back(phi);
    c.theta2.push_back(t2);
    c.theta3.push_back(t3);
    c.image.push_back(half_section(g, t2, t3));
  }
  return c;
}

SingularCurve make_line(const Geometry& g, Branch b, double theta3, int n) {
  SingularCurve c;
  c.branch = b;
  c.theta3_center = theta3;
  for (int k = 0; k < n; ++k) {
    const double t2 = -kPi + kTwoPi * k / n;
    c.param.push_back(t2);
    c.theta2.push_back(t2);
    c.theta3.push_back(wrap_angle(theta3));
    c.image.push_back(half_section(g, t2, theta3));
  }
  return c;
}

bool inside_polygon(const std::vector<HalfSectionPoint>& poly,
                    const HalfSectionPoint& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.z > p.z) != (b.z > p.z)) {
      const double x = a.rho + (p.z - a.z) * (b.rho - a.rho) / (b.z - a.z);
      if (p.rho < x) inside = !inside;
    }
  }
  return inside;
}

const SingularCurve* find_branch(const std::vector<SingularCurve>& curves,
                                 Branch b) {
  for (const auto& c : curves)
    if (c.branch == b) return &c;
  return nullptr;
}

double clearance(const FeatureReport& r, const HalfSectionPoint& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : r.curves) {
    if (c.is_line()) continue;
    for (const auto& q : c.image) best = std::min(best, dist(p, q));
  }
  for (const auto& q : r.isolated_points) best = std::min(best, dist(p, q));
  return best;
}

template <typename Pred>
std::optional<HalfSectionPoint> best_probe(const FeatureReport& r,
                                           const SingularCurve& frame,
                                           Pred accept) {
  double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
  double zmin = rmin, zmax = -rmin;
  for (const auto& p : frame.image) {
    rmin = std::min(rmin, p.rho);
    rmax = std::max(rmax, p.rho);
    zmin = std::min(zmin, p.z);
    zmax = std::max(zmax, p.z);
  }
  constexpr int kGrid = 32;
  std::optional<HalfSectionPoint> best;
  double best_clear = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const HalfSectionPoint p{rmin + (rmax - rmin) * (i + 0.5) / kGrid,
                               zmin + (zmax - zmin) * (j + 0.5) / kGrid};
      if (!accept(p)) continue;
      const double cl = clearance(r, p);
      if (cl > best_clear) {
        best_clear = cl;
        best = p;
      }
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::S1: return "S1";
    case Branch::S2: return "S2";
    case Branch::LinePlus: return "LINE_PLUS";
    case Branch::LineMinus: return "LINE_MINUS";
  }
  return "?";
}

std::pair<double, double> SingularCurve::joint_at(const Geometry& g,
                                                  double p) const {
  if (is_line()) return {wrap_angle(p), wrap_angle(theta3_center)};
  const double t3 = theta3_center + theta3_half_width * std::cos(p);
  const double sign = std::sin(p) < 0.0 ? -1.0 : 1.0;
  return {wrap_angle(sign * std::acos(c2_on_loop(g, t3))), wrap_angle(t3)};
}

HalfSectionPoint SingularCurve::image_at(const Geometry& g, double p) const {
  const auto [t2, t3] = joint_at(g, p);
  return half_section(g, t2, t3);
}

std::vector<double> singular_theta2(const Geometry& g, double theta3) {
  const double s3 = std::sin(theta3), c3 = std::cos(theta3);
  const double den = c3 * g.r2 - s3 * g.d3;
  const double num = s3 * g.d2;
  if (std::abs(den) <= 1e-15 * g.scale()) return {};
  double c2 = num / den;
  if (std::abs(c2) > 1.0 + 1e-12) return {};
  c2 = std::clamp(c2, -1.0, 1.0);
  const double t2 = std::acos(c2);
  if (t2 == 0.0) return {0.0};
  if (t2 == kPi) return {-kPi};
  return {t2, -t2};
}

std::vector<SingularCurve> trace_singular_set(const Geometry& g,
                                              int n_samples) {
  if (n_samples < 100)
    throw std::invalid_argument("trace_singular_set needs n_samples >= 100");
  // |c2| <= 1  <=>  |r2 cot(theta3) - d3| >= d2.  The two theta3 intervals
  // are bounded by cot = (d3 + d2) / r2 (c2 = 1) and (d3 - d2) / r2 (c2 = -1).
  const double ta = std::atan2(g.r2, g.d3 + g.d2);
  const double tb = std::atan2(g.r2, g.d3 - g.d2);
  SingularCurve a = make_loop(g, tb - kPi, ta, n_samples);
  SingularCurve b = make_loop(g, tb, ta + kPi, n_samples);

  auto max_rho = [](const SingularCurve& c) {
    double m = 0.0;
    for (const auto& p : c.image) m = std::max(m, p.rho);
    return m;
  };
  if (max_rho(a) > max_rho(b)) std::swap(a, b);
  a.branch = Branch::S1;
  b.branch = Branch::S2;

  std::vector<SingularCurve> out;
  out.push_back(std::move(a));
  out.push_back(std::move(b));
  if (g.d3 < g.d4) {
    const double t3 = std::acos(-g.d3 / g.d4);
    out.push_back(make_line(g, Branch::LinePlus, t3, n_samples));
    out.push_back(make_line(g, Branch::LineMinus, -t3, n_samples));
  } else if (g.d3 == g.d4) {
    out.push_back(make_line(g, Branch::LinePlus, kPi, n_samples));
  }
  return out;
}

std::vector<HalfSectionPoint> workspace_image(const Geometry& g,
                                              const SingularCurve& curve) {
  std::vector<HalfSectionPoint> out;
  out.reserve(curve.theta2.size());
  for (std::size_t i = 0; i < curve.theta2.size(); ++i)
    out.push_back(half_section(g, curve.theta2[i], curve.theta3[i]));
  return out;
}

std::vector<HalfSectionPoint> isolated_singular_points(const Geometry& g) {
  if (g.d3 > g.d4) return {};
  // F = 0 puts the end point on the second joint axis: z = 0 and
  // rho = sqrt(d2^2 + G^2) with G = r2 + d4 s3.
  if (g.d3 == g.d4) return {{std::hypot(g.d2, g.r2), 0.0}};
  const double s3 = std::sqrt(1.0 - (g.d3 / g.d4) * (g.d3 / g.d4));
  std::vector<HalfSectionPoint> out{
      {std::hypot(g.d2, g.r2 + g.d4 * s3), 0.0},
      {std::hypot(g.d2, g.r2 - g.d4 * s3), 0.0}};
  return out;
}

CuspDetection detect_cusps(const Geometry& g,
                           const std::vector<SingularCurve>& curves,
                           const TraceOptions& opts) {
  CuspDetection out;
  for (const auto& c : curves) {
    if (c.is_line()) continue;
    const std::size_t n = c.image.size();
    const double dphi = kTwoPi / static_cast<double>(n);

    std::vector<Vec2> dir(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = c.image[i];
      const auto& q = c.image[(i + 1) % n];
      const double len = dist(p, q);
      dir[i] = len > 0.0 ? Vec2{(q.rho - p.rho) / len, (q.z - p.z) / len}
                         : Vec2{0.0, 0.0};
    }

    std::vector<CuspPoint> found;
    for (std::size_t i = 0; i < n; ++i) {
      // A sharp cusp can split its turn over two vertices, so the segment
      // after next is compared as well.
      const Vec2 u = dir[i];
      const Vec2 v = dir[(i + 1) % n];
      const Vec2 w = dir[(i + 2) % n];
      if (u.x * v.x + u.y * v.y >= -0.5 && u.x * w.x + u.y * w.y >= -0.5)
        continue;

      // Velocity component along the incoming direction changes sign at the
      // stationary point of the image.
      auto along = [&](double p) {
        const Vec2 vel = image_velocity(g, c, p);
        return vel.x * u.x + vel.y * u.y;
      };
      double a = c.param[i] - dphi;
      double b = c.param[i] + 4.0 * dphi;
      double fa = along(a);
      const double fb = along(b);
      CuspPoint cp;
      cp.branch = c.branch;
      if (fa * fb > 0.0) {
        cp.param = c.param[i] + dphi;
        cp.location = c.image[(i + 1) % n];
        std::tie(cp.theta2, cp.theta3) = c.joint_at(g, cp.param);
        out.rejected.push_back(cp);
        continue;
      }
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = along(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      cp.param = std::fmod(0.5 * (a + b) + kTwoPi, kTwoPi);
      cp.location = c.image_at(g, cp.param);
      std::tie(cp.theta2, cp.theta3) = c.joint_at(g, cp.param);

      const auto pattern =
          solve_roots(ik_quartic(g, cp.location.rho * cp.location.rho,
                                 cp.location.z),
                      opts.multiplicity_tol);
      cp.multiplicity = multiplicity_near(pattern, cp.theta3, 1e-4);

      const bool duplicate = std::any_of(
          found.begin(), found.end(), [&](const CuspPoint& o) {
            return dist(o.location, cp.location) <= opts.merge_radius;
          });
      if (duplicate) continue;
      if (cp.multiplicity >= 3)
        found.push_back(cp);
      else
        out.rejected.push_back(cp);
    }
    out.cusps.insert(out.cusps.end(), found.begin(), found.end());
  }
  auto by_location = [](const CuspPoint& a, const CuspPoint& b) {
    return std::tie(a.location.rho, a.location.z) <
           std::tie(b.location.rho, b.location.z);
  };
  std::sort(out.cusps.begin(), out.cusps.end(), by_location);
  std::sort(out.rejected.begin(), out.rejected.end(), by_location);
  return out;
}

std::vector<NodePoint> detect_nodes(const Geometry& g,
                                    const std::vector<SingularCurve>& curves,
                                    const std::vector<CuspPoint>& cusps,
                                    const TraceOptions& opts) {
  struct Segment {
    int curve;
    int index;
    double xmin, xmax, ymin, ymax;
  };
  std::vector<const SingularCurve*> loops;
  for (const auto& c : curves)
    if (!c.is_line()) loops.push_back(&c);

  std::vector<Segment> segs;
  for (int ci = 0; ci < static_cast<int>(loops.size()); ++ci) {
    const auto& img = loops[static_cast<std::size_t>(ci)]->image;
    const int n = static_cast<int>(img.size());
    for (int i = 0; i < n; ++i) {
      const auto& p = img[static_cast<std::size_t>(i)];
      const auto& q = img[static_cast<std::size_t>((i + 1) % n)];
      segs.push_back({ci, i, std::min(p.rho, q.rho), std::max(p.rho, q.rho),
                      std::min(p.z, q.z), std::max(p.z, q.z)});
    }
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.xmin < b.xmin; });

  const auto isolated = isolated_singular_points(g);
  const double scale = g.scale();
  std::vector<NodePoint> nodes;

  auto refine = [&](const SingularCurve& ca, double pa, const SingularCurve& cb,
                    double pb) -> std::pair<double, double> {
    const double pa0 = pa, pb0 = pb;
    const double limit = 4.0 * kTwoPi / static_cast<double>(ca.image.size());
    for (int it = 0; it < 40; ++it) {
      const auto ia = ca.image_at(g, pa);
      const auto ib = cb.image_at(g, pb);
      const double rx = ia.rho - ib.rho, ry = ia.z - ib.z;
      if (std::hypot(rx, ry) <= 1e-13 * scale) break;
      const Vec2 va = image_velocity(g, ca, pa);
      const Vec2 vb = image_velocity(g, cb, pb);
      // Solve [va, -vb] [da, db]^T = -r.
      const double det = va.x * (-vb.y) - (-vb.x) * va.y;
      if (det == 0.0) return {pa0, pb0};
      const double da = (-rx * (-vb.y) - (-vb.x) * (-ry)) / det;
      const double db = (va.x * (-ry) - va.y * (-rx)) / det;
      pa += da;
      pb += db;
      if (std::abs(pa - pa0) > limit || std::abs(pb - pb0) > limit)
        return {pa0, pb0};
    }
    return {pa, pb};
  };

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    for (std::size_t j = i + 1; j < segs.size() && segs[j].xmin <= s.xmax; ++j) {
      const Segment& t = segs[j];
      if (t.ymin > s.ymax || t.ymax < s.ymin) continue;
      const SingularCurve& ca = *loops[static_cast<std::size_t>(s.curve)];
      const SingularCurve& cb = *loops[static_cast<std::size_t>(t.curve)];
      if (s.curve == t.curve) {
        const int n = static_cast<int>(ca.image.size());
        const int d = std::abs(s.index - t.index);
        if (std::min(d, n - d) <= 2) continue;
      }
      const int na = static_cast<int>(ca.image.size());
      const int nb = static_cast<int>(cb.image.size());
      const auto& p1 = ca.image[static_cast<std::size_t>(s.index)];
      const auto& p2 = ca.image[static_cast<std::size_t>((s.index + 1) % na)];
      const auto& p3 = cb.image[static_cast<std::size_t>(t.index)];
      const auto& p4 = cb.image[static_cast<std::size_t>((t.index + 1) % nb)];
      const double d1x = p2.rho - p1.rho, d1y = p2.z - p1.z;
      const double d2x = p4.rho - p3.rho, d2y = p4.z - p3.z;
      const double den = d1x * d2y - d1y * d2x;
      if (den == 0.0) continue;
      const double wx = p3.rho - p1.rho, wy = p3.z - p1.z;
      const double sa = (wx * d2y - wy * d2x) / den;
      const double sb = (wx * d1y - wy * d1x) / den;
      if (sa < 0.0 || sa >= 1.0 || sb < 0.0 || sb >= 1.0) continue;

      const double dpa = kTwoPi / na, dpb = kTwoPi / nb;
      auto [pa, pb] = refine(ca, ca.param[static_cast<std::size_t>(s.index)] + sa * dpa,
                             cb, cb.param[static_cast<std::size_t>(t.index)] + sb * dpb);
      if (s.curve == t.curve &&
          std::abs(wrap_angle(pa - pb)) < 1e-6)
        continue;

      NodePoint node;
      node.location = ca.image_at(g, pa);
      node.preimages[0] = ca.joint_at(g, pa);
      node.preimages[1] = cb.joint_at(g, pb);
      node.branches = {ca.branch, cb.branch};

      const bool near_cusp =
          std::any_of(cusps.begin(), cusps.end(), [&](const CuspPoint& c) {
            return dist(c.location, node.location) < opts.cusp_exclusion;
          });
      if (near_cusp) continue;
      const bool duplicate =
          std::any_of(nodes.begin(), nodes.end(), [&](const NodePoint& o) {
            return dist(o.location, node.location) <= opts.merge_radius;
          });
      if (duplicate) continue;

      node.at_isolated_point =
          std::any_of(isolated.begin(), isolated.end(), [&](const auto& q) {
            return dist(q, node.location) <= opts.merge_radius;
          });
      if (node.at_isolated_point) {
        node.confirmed = true;
      } else {
        const auto pattern = solve_roots(
            ik_quartic(g, node.location.rho * node.location.rho,
                       node.location.z),
            opts.multiplicity_tol);
        node.confirmed = pattern.count_at_least(2) >= 2;
      }
      nodes.push_back(node);
    }
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const NodePoint& a, const NodePoint& b) {
              return std::tie(a.location.rho, a.location.z) <
                     std::tie(b.location.rho, b.location.z);
            });
  return nodes;
}

FeatureReport count_features(const Geometry& g, const TraceOptions& opts) {
  FeatureReport r;
  r.curves = trace_singular_set(g, opts.n_samples);
  r.isolated_points = isolated_singular_points(g);
  r.cusp_detection = detect_cusps(g, r.curves, opts);
  r.nodes = detect_nodes(g, r.curves, r.cusp_detection.cusps, opts);
  r.count.n_cusps = static_cast<int>(r.cusp_detection.cusps.size());
  r.count.n_nodes = static_cast<int>(r.nodes.size());
  r.n_isolated_nodes = static_cast<int>(std::count_if(
      r.nodes.begin(), r.nodes.end(),
      [](const NodePoint& n) { return n.at_isolated_point; }));
  return r;
}

int aspect_count(const Geometry& g, int grid_n) {
  if (grid_n < 64) throw std::invalid_argument("aspect_count needs grid_n >= 64");
  const auto n = static_cast<std::size_t>(grid_n);
  std::vector<int> sign(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t2 = -kPi + kTwoPi * (static_cast<double>(i) + 0.5) / grid_n;
    for (std::size_t j = 0; j < n; ++j) {
      const double t3 = -kPi + kTwoPi * (static_cast<double>(j) + 0.5) / grid_n;
      const double d = jacobian_det_closed(g, {0.0, t2, t3});
      sign[i * n + j] = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    }
  }
  std::vector<std::size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    if (sign[a] == 0 || sign[a] != sign[b]) return;
    parent[find(a)] = find(b);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      unite(i * n + j, ((i + 1) % n) * n + j);
      unite(i * n + j, i * n + (j + 1) % n);
    }
  }
  int components = 0;
  for (std::size_t k = 0; k < n * n; ++k)
    if (sign[k] != 0 && find(k) == k) ++components;
  return components;
}

std::optional<HalfSectionPoint> interior_probe(const FeatureReport& r) {
  const SingularCurve* s1 = find_branch(r.curves, Branch::S1);
  if (!s1) return std::nullopt;
  return best_probe(r, *s1, [&](const HalfSectionPoint& p) {
    return inside_polygon(s1->image, p);
  });
}

std::optional<HalfSectionPoint> exterior_probe(const FeatureReport& r) {
  const SingularCurve* s1 = find_branch(r.curves, Branch::S1);
  const SingularCurve* s2 = find_branch(r.curves, Branch::S2);
  if (!s1 || !s2) return std::nullopt;
  return best_probe(r, *s2, [&](const HalfSectionPoint& p) {
    return inside_polygon(s2->image, p) && !inside_polygon(s1->image, p);
  });
}

int ik_count_at(const Geometry& g, const HalfSectionPoint& p) {
  return static_cast<int>(
      inverse_kinematics(g, {p.rho, 0.0, p.z}).solutions.size());
}

}  // namespace orthotopo
