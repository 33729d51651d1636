#include "orthotopo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace orthotopo {

namespace {

constexpr std::size_t kMaxLog = 20;
constexpr double kPi = std::numbers::pi;

void record(SuiteResult& r, const std::string& msg) {
  ++r.failures;
  if (r.log.size() < kMaxLog) r.log.push_back(msg);
}

std::string geom_str(const Geometry& g) {
  std::ostringstream os;
  os.precision(9);
  os << "(" << g.d2 << "," << g.d3 << "," << g.d4 << "," << g.r2 << ")";
  return os.str();
}

double min_surface_distance(const SurfaceAtlas& atlas, double d3, double d4,
                            double r2) {
  double best = std::abs(d3 - 1.0) < 1e-12 ? 0.0 : 1e300;
  for (SurfaceId id : kAllSurfaces) {
    if (!surface_applicable(id, d3)) continue;
    best = std::min(best, std::abs(d4 - atlas.value(id, d3, r2)));
  }
  return best;
}

}  // namespace

SuiteResult verify_det_ratio(int n_geometries, int n_configs,
                             std::uint64_t seed) {
  SuiteResult r{"det_ratio", false, 0, 0, "", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(0.2, 3.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  double worst = 0.0;
  for (int gi = 0; gi < n_geometries; ++gi) {
    const Geometry g(1.0, len(rng), len(rng), len(rng));
    const int per = std::max(1, n_configs / std::max(1, n_geometries));
    for (int k = 0; k < per; ++k) {
      const JointConfig q{ang(rng), ang(rng), ang(rng)};
      const double closed = jacobian_det_closed(g, q);
      if (std::abs(closed) < 1e-2) continue;
      ++r.checked;
      const double rel =
          std::abs(jacobian_det_numeric(g, q) / (g.d4 * closed) - 1.0);
      worst = std::max(worst, rel);
      if (rel > 1e-5) {
        std::ostringstream os;
        os << geom_str(g) << " q=(" << q.theta1 << "," << q.theta2 << ","
           << q.theta3 << ") relative deviation " << rel;
        record(r, os.str());
      }
    }
  }
  std::ostringstream os;
  os << "max |numeric / (d4 * closed) - 1| = " << worst;
  r.detail = os.str();
  r.passed = r.failures == 0 && r.checked > 0;
  return r;
}

SuiteResult verify_round_trip(int n, std::uint64_t seed) {
  SuiteResult r{"round_trip", false, 0, 0, "", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(0.1, 3.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  double worst = 0.0;
  while (r.checked < n) {
    const Geometry g(1.0, len(rng), len(rng), len(rng));
    const JointConfig q{ang(rng), ang(rng), ang(rng)};
    if (std::abs(jacobian_det_closed(g, q)) <= 1e-3 * g.scale()) continue;
    ++r.checked;
    const auto p = forward_kinematics(g, q);
    const auto ik = inverse_kinematics(g, p);
    const std::size_t count = ik.solutions.size();
    double best = 1e300;
    for (const auto& s : ik.solutions) {
      const double e = std::max({std::abs(angle_diff(s.theta1, q.theta1)),
                                 std::abs(angle_diff(s.theta2, q.theta2)),
                                 std::abs(angle_diff(s.theta3, q.theta3))});
      best = std::min(best, e);
    }
    if (count > 0) worst = std::max(worst, best);
    if ((count != 2 && count != 4) || best > 1e-6) {
      std::ostringstream os;
      os << geom_str(g) << " q=(" << q.theta1 << "," << q.theta2 << ","
         << q.theta3 << ") solutions=" << count << " best error " << best;
      record(r, os.str());
    }
  }
  std::ostringstream os;
  os << "max joint error " << worst;
  r.detail = os.str();
  r.passed = r.failures == 0;
  return r;
}

SuiteResult verify_branch_residuals(int n, std::uint64_t seed,
                                    const SurfaceAtlas& atlas) {
  SuiteResult r{"branch_residuals", false, 0, 0, "", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double d3 = u(rng), r2 = u(rng);
    if (d3 == 1.0) continue;
    ++r.checked;
    const SurfaceId high = d3 > 1.0 ? SurfaceId::C3 : SurfaceId::C4;
    const std::pair<int, SurfaceId> checks[] = {
        {9, SurfaceId::C2}, {8, high}, {7, SurfaceId::C1}};
    for (const auto& [eq, id] : checks) {
      const double d4 = atlas.value(id, d3, r2);
      const double rel = std::abs(cr_residual(eq, d3, d4, r2)) /
                         cr_scale(eq, d3, d4, r2);
      worst = std::max(worst, rel);
      if (rel > 1e-9) {
        std::ostringstream os;
        os.precision(9);
        os << "condition " << eq << " at d4=" << to_string(id) << "(" << d3
           << "," << r2 << ")=" << d4 << " relative residual " << rel;
        record(r, os.str());
      }
    }
  }
  std::ostringstream os;
  os << "max relative residual " << worst;
  r.detail = os.str();
  r.passed = r.failures == 0;
  return r;
}

SuiteResult verify_oracle_agreement(const AgreementOptions& opts) {
  SuiteResult r{"oracle_agreement", false, 0, 0, "", {}};
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  constexpr double r2_values[] = {0.5, 1.0, 2.0};
  while (r.checked < opts.n) {
    const double d3 = u(rng), d4 = u(rng);
    const double r2 = r2_values[rng() % 3];
    if (min_surface_distance(opts.atlas, d3, d4, r2) < opts.band) continue;
    const Geometry g(1.0, d3, d4, r2);
    ++r.checked;
    const auto s = classify_by_surfaces(g, 1e-6, opts.atlas);
    const auto n = classify_numeric(g);
    if (s.domain != n.domain || s.wt != n.wt) {
      std::ostringstream os;
      os << geom_str(g) << " surfaces: domain " << s.domain << " "
         << to_string(s.wt) << "; numeric: domain " << n.domain << " "
         << to_string(n.wt) << " [" << n.diagnostics << "]";
      record(r, os.str());
    }
  }
  const double rate =
      r.checked > 0 ? 1.0 - static_cast<double>(r.failures) / r.checked : 0.0;
  std::ostringstream os;
  os << "agreement " << (r.checked - r.failures) << "/" << r.checked << " ("
     << 100.0 * rate << "%, required " << 100.0 * opts.required_rate << "%)";
  r.detail = os.str();
  r.passed = r.checked > 0 && rate >= opts.required_rate;
  return r;
}

SuiteResult verify_non_separation(int n_per_locus, std::uint64_t seed,
                                  double delta, const SurfaceAtlas& atlas) {
  SuiteResult r{"non_separation", false, 0, 0, "", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u3(0.05, 3.0);
  std::uniform_real_distribution<double> ur(0.05, 3.0);

  struct Locus {
    const char* name;
    double (*d4)(double, double);
  };
  const Locus loci[] = {
      {"d4=d3/(1+r2^2)", [](double d3, double r2) { return d3 / (1.0 + r2 * r2); }},
      {"d4^2=d3^2+r2^2", [](double d3, double r2) { return std::hypot(d3, r2); }},
      {"non-C1 root of the C1 condition",
       [](double d3, double r2) { return branch_report(d3, r2).eq7_non_separating; }},
  };
  int short_loci = 0;
  for (const auto& locus : loci) {
    int found = 0;
    for (int attempt = 0; attempt < 200 * n_per_locus && found < n_per_locus;
         ++attempt) {
      const double d3 = u3(rng), r2 = ur(rng);
      const double d4 = locus.d4(d3, r2);
      if (!(d4 > 0.0) || d4 > 5.0) continue;
      if (min_surface_distance(atlas, d3, d4, r2) < 0.05) continue;
      ++found;
      ++r.checked;
      const auto lo = classify_numeric(Geometry(1.0, d3, d4 * (1.0 - delta), r2));
      const auto hi = classify_numeric(Geometry(1.0, d3, d4 * (1.0 + delta), r2));
      if (lo.domain != hi.domain || lo.wt != hi.wt) {
        std::ostringstream os;
        os.precision(9);
        os << locus.name << " at (d3,r2)=(" << d3 << "," << r2 << ") d4=" << d4
           << ": " << to_string(lo.wt) << " below, " << to_string(hi.wt)
           << " above";
        record(r, os.str());
      }
    }
    if (found < n_per_locus) {
      ++short_loci;
      std::ostringstream os;
      os << locus.name << ": only " << found << " admissible samples";
      record(r, os.str());
    }
  }
  std::ostringstream os;
  os << r.checked << " straddles at relative offset " << delta << ", "
     << (r.failures - short_loci) << " changed classification";
  r.detail = os.str();
  r.passed = r.failures == 0;
  return r;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& opts) {
  const int n = std::max(1, opts.n);
  std::vector<SuiteResult> out;
  out.push_back(verify_det_ratio(20, n, opts.seed));
  out.push_back(verify_round_trip(n, opts.seed + 1));
  out.push_back(verify_branch_residuals(n, opts.seed + 2, opts.atlas));
  AgreementOptions ao;
  ao.n = n;
  ao.seed = opts.seed + 3;
  ao.atlas = opts.atlas;
  out.push_back(verify_oracle_agreement(ao));
  out.push_back(
      verify_non_separation(std::max(1, n / 4), opts.seed + 4, 1e-2, opts.atlas));
  return out;
}

}  // namespace orthotopo
