#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthotopo/classifier.hpp"
#include "orthotopo/surfaces.hpp"

namespace orthotopo {

struct SuiteResult {
  std::string name;
  bool passed = false;
  int checked = 0;
  int failures = 0;
  /// One-line summary of the worst case or the measured rate.
  std::string detail;
  /// Individual failing cases (capped).
  std::vector<std::string> log;
};

/// Numeric determinant against d4 times the closed form.
SuiteResult verify_det_ratio(int n_geometries, int n_configs, std::uint64_t seed);

/// FK followed by IK recovers the seed configuration.
SuiteResult verify_round_trip(int n, std::uint64_t seed);

/// Residuals of the printed polynomial conditions on the matching surfaces,
/// over (d3, r2) uniform in (0.05, 4)^2.
SuiteResult verify_branch_residuals(int n, std::uint64_t seed,
                                    const SurfaceAtlas& atlas = {});

struct AgreementOptions {
  int n = 500;
  std::uint64_t seed = 1;
  /// Samples closer than this (in d4) to any surface are redrawn.
  double band = 1e-2;
  double required_rate = 0.99;
  SurfaceAtlas atlas{};
};

/// Surface and numeric verdicts on random geometries, (d3, d4) in
/// (0.05, 3]^2 and r2 in {0.5, 1, 2}.
SuiteResult verify_oracle_agreement(const AgreementOptions& opts);

/// Loci that must not change the topology: d4 = d3 / (1 + r2^2),
/// d4^2 = d3^2 + r2^2 and the root of the quartic-in-d4 condition that is
/// not C1.
/// Numeric classification at d4 (1 - delta) and d4 (1 + delta) must match.
SuiteResult verify_non_separation(int n_per_locus, std::uint64_t seed,
                                  double delta = 1e-2,
                                  const SurfaceAtlas& atlas = {});

struct VerifyOptions {
  int n = 200;
  std::uint64_t seed = 1;
  SurfaceAtlas atlas{};
};

/// All suites with sizes derived from opts.n.
std::vector<SuiteResult> run_verify(const VerifyOptions& opts);

}  // namespace orthotopo
