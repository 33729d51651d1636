// Command-line front end: classify, fk, ik, boundary, sweep, verify.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid arguments or an
// output path that cannot be written.

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orthotopo/classifier.hpp"
#include "orthotopo/io.hpp"
#include "orthotopo/kinematics.hpp"
#include "orthotopo/singularity.hpp"
#include "orthotopo/surfaces.hpp"
#include "orthotopo/sweep.hpp"
#include "orthotopo/verify.hpp"

namespace {

using namespace orthotopo;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometryFlags {
  double d2 = 1.0;
  double d3 = 0.0;
  double d4 = 0.0;
  double r2 = 0.0;

  [[nodiscard]] Geometry geometry() const { return Geometry(d2, d3, d4, r2); }
};

void add_geometry(CLI::App* cmd, GeometryFlags& g) {
  cmd->add_option("--d2", g.d2, "second link length")->capture_default_str();
  cmd->add_option("--d3", g.d3, "third link length")->required();
  cmd->add_option("--d4", g.d4, "end-effector offset")->required();
  cmd->add_option("--r2", g.r2, "second joint offset")->required();
}

const CLI::Validator kRadians(
    [](std::string& value) -> std::string {
      if (value.find("deg") != std::string::npos ||
          value.find("\xC2\xB0") != std::string::npos)
        return "angles are given in radians; '" + value + "' looks like degrees";
      return {};
    },
    "RADIANS");

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw UsageError("failed writing '" + path + "'");
}

Method parse_mode(const std::string& s) {
  if (auto m = method_from_string(s)) return *m;
  throw UsageError("unknown mode '" + s + "' (surfaces|numeric|both)");
}

SurfaceAtlas parse_tamper(const std::vector<std::string>& items) {
  SurfaceAtlas atlas;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw UsageError("--tamper expects SURFACE:FACTOR, got '" + item + "'");
    const auto id = surface_from_string(item.substr(0, colon));
    if (!id) throw UsageError("unknown surface in --tamper '" + item + "'");
    double factor = 0.0;
    try {
      std::size_t used = 0;
      factor = std::stod(item.substr(colon + 1), &used);
      if (used != item.size() - colon - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad factor in --tamper '" + item + "'");
    }
    atlas.factor[static_cast<std::size_t>(*id)] = factor;
  }
  return atlas;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workspace topology of 3R orthogonal manipulators"};
  app.require_subcommand(1);

  // classify
  GeometryFlags cg;
  std::string c_mode = "surfaces";
  double c_eps = 1e-6;
  int c_samples = 2000;
  std::string c_out;
  auto* classify_cmd = app.add_subcommand("classify", "cusp domain and workspace topology");
  add_geometry(classify_cmd, cg);
  classify_cmd->add_option("--mode", c_mode, "surfaces|numeric|both")->capture_default_str();
  classify_cmd->add_option("--eps", c_eps, "boundary band in d4")->capture_default_str();
  classify_cmd->add_option("--samples", c_samples, "samples per singular branch")
      ->capture_default_str();
  classify_cmd->add_option("--out", c_out, "output file (default stdout)");

  // fk
  GeometryFlags fg;
  JointConfig fq;
  std::string f_out;
  auto* fk_cmd = app.add_subcommand("fk", "forward kinematics");
  add_geometry(fk_cmd, fg);
  fk_cmd->add_option("--t1", fq.theta1, "joint 1 (rad)")->required()->check(kRadians);
  fk_cmd->add_option("--t2", fq.theta2, "joint 2 (rad)")->required()->check(kRadians);
  fk_cmd->add_option("--t3", fq.theta3, "joint 3 (rad)")->required()->check(kRadians);
  fk_cmd->add_option("--out", f_out, "output file (default stdout)");

  // ik
  GeometryFlags ig;
  CartesianPoint ip;
  std::string i_out;
  auto* ik_cmd = app.add_subcommand("ik", "inverse kinematics");
  add_geometry(ik_cmd, ig);
  ik_cmd->add_option("--x", ip.x)->required();
  ik_cmd->add_option("--y", ip.y)->required();
  ik_cmd->add_option("--z", ip.z)->required();
  ik_cmd->add_option("--out", i_out, "output file (default stdout)");

  // boundary
  GeometryFlags bg;
  std::string b_format = "csv";
  std::string b_out;
  int b_samples = 2000;
  auto* boundary_cmd = app.add_subcommand("boundary", "singular curves in the half cross-section");
  add_geometry(boundary_cmd, bg);
  boundary_cmd->add_option("--format", b_format, "csv|svg")
      ->check(CLI::IsMember({"csv", "svg"}))
      ->capture_default_str();
  boundary_cmd->add_option("--samples", b_samples, "samples per branch")->capture_default_str();
  boundary_cmd->add_option("--out", b_out, "output file (default stdout)");

  // sweep
  double s_r2 = 1.0;
  Range s_d3{0.02, 3.0}, s_d4{0.02, 3.0};
  int s_res = 300;
  int s_res_d4 = 0;
  std::string s_mode = "surfaces";
  std::string s_format = "csv";
  std::string s_out;
  double s_spot = 0.01;
  auto* sweep_cmd = app.add_subcommand("sweep", "partition of a (d3, d4) section");
  sweep_cmd->add_option("--r2", s_r2)->capture_default_str();
  sweep_cmd->add_option("--d3-min", s_d3.lo)->capture_default_str();
  sweep_cmd->add_option("--d3-max", s_d3.hi)->capture_default_str();
  sweep_cmd->add_option("--d4-min", s_d4.lo)->capture_default_str();
  sweep_cmd->add_option("--d4-max", s_d4.hi)->capture_default_str();
  sweep_cmd->add_option("--res", s_res, "cells per axis")->capture_default_str();
  sweep_cmd->add_option("--res-d4", s_res_d4, "cells along d4 (default: --res)");
  sweep_cmd->add_option("--mode", s_mode, "surfaces|numeric|both")->capture_default_str();
  sweep_cmd->add_option("--spot-fraction", s_spot,
                        "cells re-checked numerically in surfaces mode")
      ->capture_default_str();
  sweep_cmd->add_option("--format", s_format, "csv|svg|json")
      ->check(CLI::IsMember({"csv", "svg", "json"}))
      ->capture_default_str();
  sweep_cmd->add_option("--out", s_out, "output file (default stdout)");

  // verify
  int v_n = 200;
  std::uint64_t v_seed = 1;
  std::vector<std::string> v_tamper;
  std::string v_format = "text";
  auto* verify_cmd = app.add_subcommand("verify", "run the cross-check suites");
  verify_cmd->add_option("--n", v_n, "samples per suite")->capture_default_str();
  verify_cmd->add_option("--seed", v_seed)->capture_default_str();
  verify_cmd->add_option("--tamper", v_tamper,
                         "scale a surface, e.g. C2:1.1 (mutation check)");
  verify_cmd->add_option("--format", v_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify_cmd) {
      const Geometry g = cg.geometry();
      NumericOptions no;
      no.trace.n_samples = c_samples;
      const auto c = classify(g, parse_mode(c_mode), no, {}, c_eps);
      if (!c.diagnostics.empty() && (c.boundary || c.agreement == Agreement::Disagree))
        std::cerr << "note: " << c.diagnostics << '\n';
      write_output(c_out, io::classification_json(g, c).dump() + "\n");
    } else if (*fk_cmd) {
      const Geometry g = fg.geometry();
      write_output(f_out, io::fk_json(g, fq, forward_kinematics(g, fq)).dump() + "\n");
    } else if (*ik_cmd) {
      const Geometry g = ig.geometry();
      write_output(i_out, io::ik_json(g, ip, inverse_kinematics(g, ip)).dump() + "\n");
    } else if (*boundary_cmd) {
      const Geometry g = bg.geometry();
      TraceOptions to;
      to.n_samples = b_samples;
      std::ostringstream os;
      if (b_format == "csv") {
        io::write_boundary_csv(os, trace_singular_set(g.normalized(), b_samples));
      } else {
        os << io::boundary_svg(g, count_features(g.normalized(), to));
      }
      write_output(b_out, os.str());
    } else if (*sweep_cmd) {
      SweepOptions so;
      so.mode = parse_mode(s_mode);
      so.spot_fraction = s_spot;
      const auto raster =
          sweep(s_r2, s_d3, s_d4, s_res, s_res_d4 > 0 ? s_res_d4 : s_res, so);
      std::ostringstream os;
      if (s_format == "csv") {
        io::write_sweep_csv(os, raster);
      } else if (s_format == "svg") {
        os << io::sweep_svg(raster, boundary_overlay(s_r2, s_d3, 600));
      } else {
        os << io::region_stats_json(raster, region_stats(raster)).dump(2) << '\n';
      }
      write_output(s_out, os.str());
    } else if (*verify_cmd) {
      VerifyOptions vo;
      vo.n = v_n;
      vo.seed = v_seed;
      vo.atlas = parse_tamper(v_tamper);
      if (v_n < 1) throw UsageError("--n must be >= 1");
      const auto results = run_verify(vo);
      bool ok = true;
      if (v_format == "json") {
        io::Json j = io::Json::array();
        for (const auto& r : results) {
          j.push_back({{"suite", r.name},
                       {"passed", r.passed},
                       {"checked", r.checked},
                       {"failures", r.failures},
                       {"detail", r.detail},
                       {"log", r.log}});
          ok = ok && r.passed;
        }
        std::cout << j.dump(2) << '\n';
      } else {
        for (const auto& r : results) {
          std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": "
                    << r.detail << '\n';
          for (const auto& line : r.log) std::cout << "    " << line << '\n';
          ok = ok && r.passed;
        }
      }
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
