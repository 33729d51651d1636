#include "orthotopo/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace orthotopo::io {

namespace {

constexpr std::array<std::string_view, 9> kPalette{
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f"};

// SVG coordinates only need to be readable.
std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Viewport {
  double x0, y0;     // pixel position of the data origin corner
  double sx, sy;     // pixels per unit
  double ox, oy;     // data offsets

  [[nodiscard]] double x(double v) const { return x0 + (v - ox) * sx; }
  [[nodiscard]] double y(double v) const { return y0 - (v - oy) * sy; }
};

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string_view palette_color(WorkspaceTopology wt) {
  return kPalette[static_cast<std::size_t>(static_cast<int>(wt) - 1)];
}

Json number(double v) { return Json(v == 0.0 ? 0.0 : v); }

void write_sweep_csv(std::ostream& os, const PartitionRaster& raster) {
  os << kSweepCsvHeader << '\n';
  const std::string r2 = format_double(raster.r2);
  for (int j = 0; j < raster.n4; ++j) {
    const std::string d4 = format_double(raster.d4_at(j));
    for (int i = 0; i < raster.n3; ++i) {
      const auto& c = raster.cell(i, j);
      os << format_double(raster.d3_at(i)) << ',' << d4 << ',' << r2 << ','
         << c.domain << ',' << to_string(c.wt) << ',' << c.n_cusps << ','
         << c.n_nodes << ',' << (c.boundary ? "true" : "false") << '\n';
    }
  }
}

void write_boundary_csv(std::ostream& os,
                        const std::vector<SingularCurve>& curves) {
  os << kBoundaryCsvHeader << '\n';
  for (const auto& c : curves) {
    const std::string_view name = to_string(c.branch);
    for (std::size_t i = 0; i < c.image.size(); ++i) {
      os << name << ',' << format_sig9(c.theta2[i]) << ','
         << format_sig9(c.theta3[i]) << ',' << format_sig9(c.image[i].rho)
         << ',' << format_sig9(c.image[i].z) << '\n';
    }
  }
}

std::string boundary_svg(const Geometry& geom, const FeatureReport& report) {
  double rho_max = 0.0, z_max = 0.0;
  for (const auto& c : report.curves)
    for (const auto& p : c.image) {
      rho_max = std::max(rho_max, p.rho);
      z_max = std::max(z_max, std::abs(p.z));
    }
  if (rho_max <= 0.0) rho_max = geom.scale();
  if (z_max <= 0.0) z_max = rho_max / 2.0;
  rho_max *= 1.05;
  z_max *= 1.05;

  const double margin = 40.0, width = 640.0;
  const double s = (width - 2.0 * margin) / rho_max;
  const double height = 2.0 * margin + 2.0 * z_max * s;
  const Viewport vp{margin, margin + z_max * s, s, s, 0.0, 0.0};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width)
     << "\" height=\"" << px(height) << "\" viewBox=\"0 0 " << px(width) << ' '
     << px(height) << "\">\n";
  os << "<title>Singular curves in the half cross-section, d2="
     << format_double(geom.d2) << " d3=" << format_double(geom.d3)
     << " d4=" << format_double(geom.d4) << " r2=" << format_double(geom.r2)
     << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  // rho axis (horizontal) and z axis
  os << "<line class=\"axis\" x1=\"" << px(vp.x(0)) << "\" y1=\"" << px(vp.y(0))
     << "\" x2=\"" << px(vp.x(rho_max)) << "\" y2=\"" << px(vp.y(0))
     << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  os << "<line class=\"axis\" x1=\"" << px(vp.x(0)) << "\" y1=\""
     << px(vp.y(z_max)) << "\" x2=\"" << px(vp.x(0)) << "\" y2=\""
     << px(vp.y(-z_max)) << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << px(vp.x(rho_max) - 20) << "\" y=\"" << px(vp.y(0) - 6)
     << "\" font-family=\"sans-serif\" font-size=\"12\">rho</text>\n";
  os << "<text x=\"" << px(vp.x(0) + 6) << "\" y=\"" << px(vp.y(z_max) + 12)
     << "\" font-family=\"sans-serif\" font-size=\"12\">z</text>\n";

  for (const auto& c : report.curves) {
    if (c.is_line()) continue;
    const bool inner = c.branch == Branch::S1;
    os << "<polyline class=\"" << (inner ? "ws1" : "ws2")
       << "\" fill=\"none\" stroke=\"" << (inner ? "#d62728" : "#1f77b4")
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i <= c.image.size(); ++i) {
      const auto& p = c.image[i % c.image.size()];
      if (i) os << ' ';
      os << px(vp.x(p.rho)) << ',' << px(vp.y(p.z));
    }
    os << "\"/>\n";
  }
  for (const auto& p : report.isolated_points) {
    os << "<rect class=\"isolated\" x=\"" << px(vp.x(p.rho) - 3) << "\" y=\""
       << px(vp.y(p.z) - 3)
       << "\" width=\"6\" height=\"6\" fill=\"#2ca02c\"/>\n";
  }
  for (const auto& c : report.cusps()) {
    os << "<circle class=\"cusp\" cx=\"" << px(vp.x(c.location.rho))
       << "\" cy=\"" << px(vp.y(c.location.z))
       << "\" r=\"4\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& n : report.nodes) {
    const double x = vp.x(n.location.rho), y = vp.y(n.location.z);
    os << "<path class=\"node\" d=\"M" << px(x - 4) << ' ' << px(y - 4) << " L"
       << px(x + 4) << ' ' << px(y + 4) << " M" << px(x - 4) << ' '
       << px(y + 4) << " L" << px(x + 4) << ' ' << px(y - 4)
       << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string sweep_svg(const PartitionRaster& raster,
                      const std::vector<OverlayCurve>& overlay) {
  const double margin = 50.0, plot = 600.0, legend_w = 150.0;
  const double width = 2.0 * margin + plot + legend_w;
  const double height = 2.0 * margin + plot;
  const double cw = plot / raster.n3, ch = plot / raster.n4;
  const auto& r3 = raster.d3_range;
  const auto& r4 = raster.d4_range;
  const Viewport vp{margin, margin + plot, plot / (r3.hi - r3.lo),
                    plot / (r4.hi - r4.lo), r3.lo, r4.lo};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width)
     << "\" height=\"" << px(height) << "\" viewBox=\"0 0 " << px(width) << ' '
     << px(height) << "\">\n";
  os << "<title>Partition of the (d3, d4) section at r2="
     << format_double(raster.r2) << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << px(margin) << "\" y=\""
     << px(margin) << "\" width=\"" << px(plot) << "\" height=\"" << px(plot)
     << "\"/></clipPath></defs>\n";

  // Cells, merged into horizontal runs of equal label.
  os << "<g class=\"raster\" shape-rendering=\"crispEdges\">\n";
  for (int j = 0; j < raster.n4; ++j) {
    const double y = margin + plot - (j + 1) * ch;
    int i = 0;
    while (i < raster.n3) {
      const auto wt = raster.cell(i, j).wt;
      int k = i + 1;
      while (k < raster.n3 && raster.cell(k, j).wt == wt) ++k;
      os << "<rect x=\"" << px(margin + i * cw) << "\" y=\"" << px(y)
         << "\" width=\"" << px((k - i) * cw) << "\" height=\"" << px(ch)
         << "\" fill=\"" << palette_color(wt) << "\"/>\n";
      i = k;
    }
  }
  os << "</g>\n";

  // Surface curves, split where they leave the plotted d4 range.
  os << "<g class=\"overlay\" clip-path=\"url(#plot)\" fill=\"none\">\n";
  for (const auto& curve : overlay) {
    const bool cusp_surface = curve.surface == SurfaceId::C1 ||
                              curve.surface == SurfaceId::C2 ||
                              curve.surface == SurfaceId::C3 ||
                              curve.surface == SurfaceId::C4;
    std::vector<std::vector<std::pair<double, double>>> segments(1);
    for (const auto& pt : curve.points) {
      if (pt.second > r4.hi + (r4.hi - r4.lo) || !std::isfinite(pt.second)) {
        if (!segments.back().empty()) segments.emplace_back();
        continue;
      }
      segments.back().push_back(pt);
    }
    for (const auto& seg : segments) {
      if (seg.size() < 2) continue;
      os << "<polyline class=\"surface\" data-surface=\""
         << to_string(curve.surface) << "\" stroke=\"#000000\" stroke-width=\""
         << (cusp_surface ? "2" : "1.5") << '"'
         << (cusp_surface ? "" : " stroke-dasharray=\"6 3\"") << " points=\"";
      for (std::size_t k = 0; k < seg.size(); ++k) {
        if (k) os << ' ';
        os << px(vp.x(seg[k].first)) << ',' << px(vp.y(seg[k].second));
      }
      os << "\"/>\n";
    }
  }
  os << "</g>\n";

  // Frame, axis labels, legend.
  os << "<rect x=\"" << px(margin) << "\" y=\"" << px(margin) << "\" width=\""
     << px(plot) << "\" height=\"" << px(plot)
     << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << px(margin + plot / 2) << "\" y=\""
     << px(height - 15) << "\" text-anchor=\"middle\">d3</text>\n";
  os << "<text x=\"15\" y=\"" << px(margin + plot / 2)
     << "\" text-anchor=\"middle\">d4</text>\n";
  for (double v : {r3.lo, r3.hi})
    os << "<text x=\"" << px(vp.x(v)) << "\" y=\"" << px(margin + plot + 15)
       << "\" text-anchor=\"middle\">" << format_sig9(v) << "</text>\n";
  for (double v : {r4.lo, r4.hi})
    os << "<text x=\"" << px(margin - 5) << "\" y=\"" << px(vp.y(v) + 4)
       << "\" text-anchor=\"end\">" << format_sig9(v) << "</text>\n";
  const double lx = margin + plot + 20;
  for (int k = 1; k <= 9; ++k) {
    const auto wt = static_cast<WorkspaceTopology>(k);
    const double ly = margin + (k - 1) * 22.0;
    os << "<rect class=\"legend\" x=\"" << px(lx) << "\" y=\"" << px(ly)
       << "\" width=\"14\" height=\"14\" fill=\"" << palette_color(wt)
       << "\"/>\n";
    os << "<text x=\"" << px(lx + 20) << "\" y=\"" << px(ly + 12) << "\">"
       << to_string(wt) << "</text>\n";
  }
  const double ly = margin + 9 * 22.0 + 10;
  os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\""
     << px(lx + 14) << "\" y2=\"" << px(ly)
     << "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << px(lx + 20) << "\" y=\"" << px(ly + 4)
     << "\">C1-C4</text>\n";
  os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly + 20) << "\" x2=\""
     << px(lx + 14) << "\" y2=\"" << px(ly + 20)
     << "\" stroke=\"#000000\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
  os << "<text x=\"" << px(lx + 20) << "\" y=\"" << px(ly + 24)
     << "\">E1-E3</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

Json classification_json(const Geometry& geom, const Classification& c) {
  Json j;
  j["d2"] = number(geom.d2);
  j["d3"] = number(geom.d3);
  j["d4"] = number(geom.d4);
  j["r2"] = number(geom.r2);
  j["domain"] = c.domain;
  j["wt"] = std::string(to_string(c.wt));
  j["n_cusps"] = c.n_cusps;
  j["n_nodes"] = c.n_nodes;
  j["method"] = std::string(to_string(c.method));
  j["boundary"] = c.boundary;
  j["agreement"] = std::string(to_string(c.agreement));
  return j;
}

Json fk_json(const Geometry& geom, const JointConfig& q,
             const CartesianPoint& p) {
  Json j;
  j["d2"] = number(geom.d2);
  j["d3"] = number(geom.d3);
  j["d4"] = number(geom.d4);
  j["r2"] = number(geom.r2);
  j["theta"] = Json::array({number(q.theta1), number(q.theta2), number(q.theta3)});
  j["point"] = Json::array({number(p.x), number(p.y), number(p.z)});
  return j;
}

Json ik_json(const Geometry& geom, const CartesianPoint& p,
             const IkResult& result) {
  Json j;
  j["d2"] = number(geom.d2);
  j["d3"] = number(geom.d3);
  j["d4"] = number(geom.d4);
  j["r2"] = number(geom.r2);
  j["point"] = Json::array({number(p.x), number(p.y), number(p.z)});
  j["continuum"] = result.continuum;
  Json sols = Json::array();
  for (const auto& q : result.solutions) {
    const auto f = forward_kinematics(geom, q);
    const double residual = std::hypot(f.x - p.x, f.y - p.y, f.z - p.z);
    Json s;
    s["theta"] = Json::array({number(q.theta1), number(q.theta2), number(q.theta3)});
    s["residual"] = number(residual);
    sols.push_back(std::move(s));
  }
  j["solutions"] = std::move(sols);
  return j;
}

Json region_stats_json(const PartitionRaster& raster, const RegionStats& st) {
  Json j;
  j["r2"] = number(raster.r2);
  j["d3_range"] = Json::array({number(raster.d3_range.lo), number(raster.d3_range.hi)});
  j["d4_range"] = Json::array({number(raster.d4_range.lo), number(raster.d4_range.hi)});
  j["resolution"] = Json::array({raster.n3, raster.n4});
  j["mode"] = std::string(to_string(raster.mode));
  j["total_cells"] = st.total_cells;
  j["boundary_cells"] = st.boundary_cells;
  Json regions;
  for (int k = 1; k <= 9; ++k) {
    const auto wt = static_cast<WorkspaceTopology>(k);
    regions[std::string(to_string(wt))] = {{"cells", st.of(wt)},
                                           {"fraction", number(st.fraction_of(wt))}};
  }
  j["regions"] = std::move(regions);
  if (raster.spot.checked > 0)
    j["spot_check"] = {{"checked", raster.spot.checked},
                       {"agreed", raster.spot.agreed},
                       {"checked_off_band", raster.spot.checked_off_band},
                       {"agreed_off_band", raster.spot.agreed_off_band}};
  return j;
}

}  // namespace orthotopo::io
