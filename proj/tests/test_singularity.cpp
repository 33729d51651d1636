#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "orthotopo/classifier.hpp"
#include "orthotopo/singularity.hpp"

using namespace orthotopo;

namespace {

constexpr double kPi = std::numbers::pi;
const Geometry kAnchor(1.0, 2.0, 1.5, 1.0);

int count_branch(const std::vector<SingularCurve>& curves, Branch b) {
  return static_cast<int>(std::count_if(
      curves.begin(), curves.end(),
      [b](const SingularCurve& c) { return c.branch == b; }));
}

double det_oracle(const Geometry& g, double t2, double t3) {
  return oracle::det_fd(g.d2, g.d3, g.d4, g.r2, t2, t3);
}

}  // namespace

TEST(SingularTheta2, ZeroSineGivesQuarterTurns) {
  auto t = singular_theta2(kAnchor, 0.0);
  ASSERT_EQ(t.size(), 2u);
  std::sort(t.begin(), t.end());
  EXPECT_NEAR(t[0], -kPi / 2, 1e-12);
  EXPECT_NEAR(t[1], kPi / 2, 1e-12);
}

TEST(SingularTheta2, QuarterTurnOfThirdJoint) {
  auto t = singular_theta2(kAnchor, kPi / 2);
  ASSERT_EQ(t.size(), 2u);
  std::sort(t.begin(), t.end());
  EXPECT_NEAR(t[0], -2.0943951, 1e-6);
  EXPECT_NEAR(t[1], 2.0943951, 1e-6);
  for (double t2 : t) EXPECT_NEAR(det_oracle(kAnchor, t2, kPi / 2), 0.0, 1e-7);
}

TEST(SingularTheta2, VanishingDenominatorIsEmpty) {
  // c3 r2 = s3 d3 with s3 != 0.
  const double t3 = std::atan2(kAnchor.r2, kAnchor.d3);
  EXPECT_TRUE(singular_theta2(kAnchor, t3).empty());
}

TEST(SingularTheta2, ResultsAreSingularForRandomInputs) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> len(0.1, 3.0), ang(-kPi, kPi);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const Geometry g(1.0, len(rng), len(rng), len(rng));
    const double t3 = ang(rng);
    for (double t2 : singular_theta2(g, t3)) {
      ++checked;
      EXPECT_NEAR(det_oracle(g, t2, t3) / (g.scale() * g.scale() * g.scale()),
                  0.0, 1e-7);
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Trace, TwoLoopsWhenD3ExceedsD4) {
  const auto curves = trace_singular_set(kAnchor, 2000);
  ASSERT_EQ(curves.size(), 2u);
  EXPECT_EQ(count_branch(curves, Branch::S1), 1);
  EXPECT_EQ(count_branch(curves, Branch::S2), 1);
}

TEST(Trace, SingularLinesWhenD4ExceedsD3) {
  const Geometry g(1.0, 0.5, 1.5, 1.0);
  const auto curves = trace_singular_set(g, 2000);
  ASSERT_EQ(count_branch(curves, Branch::LinePlus), 1);
  ASSERT_EQ(count_branch(curves, Branch::LineMinus), 1);
  const double expected = std::acos(-1.0 / 3.0);
  for (const auto& c : curves) {
    if (c.branch == Branch::LinePlus)
      for (double t3 : c.theta3) EXPECT_NEAR(t3, expected, 1e-12);
    if (c.branch == Branch::LineMinus)
      for (double t3 : c.theta3) EXPECT_NEAR(t3, -expected, 1e-12);
  }
  EXPECT_GE(count_branch(curves, Branch::S1) + count_branch(curves, Branch::S2), 1);
}

TEST(Trace, EverySampleIsSingular) {
  for (const Geometry& g : {kAnchor, Geometry(1.0, 0.5, 1.5, 1.0),
                            Geometry(1.0, 2.0, 3.0, 1.0),
                            Geometry(1.0, 0.3, 0.2, 2.0)}) {
    for (const auto& c : trace_singular_set(g, 500)) {
      for (std::size_t i = 0; i < c.theta2.size(); ++i) {
        const JointConfig q{0.0, c.theta2[i], c.theta3[i]};
        EXPECT_LE(std::abs(jacobian_det_closed(g, q)), 1e-9);
      }
    }
  }
}

TEST(Trace, TooFewSamplesThrows) {
  EXPECT_THROW(trace_singular_set(kAnchor, 99), std::invalid_argument);
}

TEST(Trace, ExternalBoundaryReachesFullExtension) {
  double traced = 0.0;
  for (const auto& c : trace_singular_set(kAnchor, 4000))
    if (c.branch == Branch::S2)
      for (const auto& p : c.image) traced = std::max(traced, p.rho);
  double grid = 0.0;
  constexpr int n = 720;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto p = oracle::fk(1.0, 2.0, 1.5, 1.0, 0.0, -kPi + 2 * kPi * i / n,
                                -kPi + 2 * kPi * j / n);
      grid = std::max(grid, std::hypot(p.x, p.y));
    }
  EXPECT_NEAR(traced, grid, 1e-3);
}

TEST(Trace, LineImagesCollapseToPoints) {
  const Geometry g(1.0, 0.5, 1.5, 1.0);
  for (const auto& c : trace_singular_set(g, 500)) {
    if (!c.is_line()) continue;
    const auto img = workspace_image(g, c);
    ASSERT_FALSE(img.empty());
    for (const auto& p : img) {
      EXPECT_NEAR(p.rho, img.front().rho, 1e-9);
      EXPECT_NEAR(p.z, 0.0, 1e-9);
    }
  }
}

TEST(Trace, ImagePointsHaveMultipleRoots) {
  for (const Geometry& g : {kAnchor, Geometry(1.0, 2.0, 0.5, 1.0)}) {
    int checked = 0;
    for (const auto& c : trace_singular_set(g, 500)) {
      for (std::size_t i = 0; i < c.image.size(); i += 25) {
        const auto& p = c.image[i];
        const auto r = inverse_kinematics(g, {p.rho, 0.0, p.z}, 1e-8);
        EXPECT_TRUE(r.continuum || r.roots.max_multiplicity() >= 2)
            << "rho=" << p.rho << " z=" << p.z;
        ++checked;
      }
    }
    EXPECT_GT(checked, 20);
  }
}

TEST(IsolatedPoints, NoneWhenD3ExceedsD4) {
  EXPECT_TRUE(isolated_singular_points(kAnchor).empty());
}

TEST(IsolatedPoints, TwoOnTheAxis) {
  const Geometry g(1.0, 0.5, 1.5, 1.0);
  auto pts = isolated_singular_points(g);
  ASSERT_EQ(pts.size(), 2u);
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.rho > b.rho; });
  const double s3 = std::sqrt(1.0 - (0.5 / 1.5) * (0.5 / 1.5));
  EXPECT_NEAR(pts[0].rho, std::hypot(1.0, 1.0 + 1.5 * s3), 1e-12);
  EXPECT_NEAR(pts[1].rho, std::hypot(1.0, 1.0 - 1.5 * s3), 1e-12);
  EXPECT_NEAR(pts[0].rho, 2.61313, 1e-5);
  EXPECT_NEAR(pts[1].rho, 1.08239, 1e-5);
  for (const auto& p : pts) EXPECT_EQ(p.z, 0.0);
}

TEST(IsolatedPoints, SinglePointAtEqualLengths) {
  const auto pts = isolated_singular_points(Geometry(1.0, 1.0, 1.0, 1.0));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR(pts[0].rho, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(pts[0].z, 0.0, 1e-12);
}

TEST(Cusps, AnchorCounts) {
  EXPECT_EQ(count_features(kAnchor).count.n_cusps, 4);
  EXPECT_EQ(count_features(Geometry(1.0, 2.0, 0.1, 1.0)).count.n_cusps, 0);
  EXPECT_EQ(count_features(Geometry(1.0, 2.0, 2.5, 1.0)).count.n_cusps, 2);
}

TEST(Cusps, FourCuspsLieOnTheInternalBoundary) {
  const auto rep = count_features(kAnchor);
  ASSERT_EQ(rep.cusps().size(), 4u);
  for (const auto& c : rep.cusps()) EXPECT_EQ(c.branch, Branch::S1);
  EXPECT_TRUE(rep.cusp_detection.rejected.empty());
}

TEST(Cusps, TripleRootAtEveryCusp) {
  for (const Geometry& g : {kAnchor, Geometry(1.0, 2.0, 2.5, 1.0),
                            Geometry(1.0, 2.0, 3.0, 1.0)}) {
    const auto rep = count_features(g);
    ASSERT_FALSE(rep.cusps().empty());
    for (const auto& c : rep.cusps()) {
      EXPECT_GE(c.multiplicity, 3);
      const auto r =
          inverse_kinematics(g, {c.location.rho, 0.0, c.location.z}, 1e-6);
      EXPECT_GE(r.roots.max_multiplicity(), 3);
    }
  }
}

TEST(Nodes, AnchorCounts) {
  EXPECT_EQ(count_features(kAnchor).count.n_nodes, 0);
  EXPECT_EQ(count_features(Geometry(1.0, 2.0, 0.5, 1.0)).count.n_nodes, 2);
  EXPECT_EQ(count_features(Geometry(1.0, 2.0, 3.0, 1.0)).count.n_nodes, 4);
}

TEST(Nodes, TwoDoubleRootsAtEveryNode) {
  for (const Geometry& g : {Geometry(1.0, 2.0, 0.5, 1.0),
                            Geometry(1.0, 2.0, 3.0, 1.0),
                            Geometry(1.0, 0.5, 2.0, 1.0)}) {
    const auto rep = count_features(g);
    ASSERT_FALSE(rep.nodes.empty());
    for (const auto& n : rep.nodes) {
      if (n.at_isolated_point) continue;
      const auto r =
          inverse_kinematics(g, {n.location.rho, 0.0, n.location.z}, 1e-7);
      EXPECT_GE(r.roots.count_at_least(2), 2)
          << "rho=" << n.location.rho << " z=" << n.location.z;
    }
  }
}

TEST(Nodes, IsolatedPointNodesAreFlagged) {
  // Just above d4 = d3 in domain 2.
  const auto rep = count_features(Geometry(1.0, 2.0, 2.05, 1.0));
  EXPECT_EQ(rep.count.n_cusps, 4);
  EXPECT_EQ(rep.count.n_nodes, 2);
  EXPECT_EQ(rep.n_isolated_nodes, 2);
  for (const auto& n : rep.nodes) EXPECT_TRUE(n.at_isolated_point);
}

TEST(Features, CountFeaturesAnchors) {
  const auto a = count_features(kAnchor).count;
  EXPECT_EQ(a.n_cusps, 4);
  EXPECT_EQ(a.n_nodes, 0);
  const auto b = count_features(Geometry(1.0, 2.0, 3.0, 1.0)).count;
  EXPECT_EQ(b.n_cusps, 4);
  EXPECT_EQ(b.n_nodes, 4);
  const auto c = count_features(Geometry(1.0, 2.0, 0.1, 1.0)).count;
  EXPECT_EQ(c.n_cusps, 0);
  EXPECT_EQ(c.n_nodes, 0);
}

TEST(Features, MirrorSymmetricAboutTheRadialAxis) {
  for (const Geometry& g : {kAnchor, Geometry(1.0, 2.0, 3.0, 1.0),
                            Geometry(1.0, 0.5, 2.0, 1.0)}) {
    const auto rep = count_features(g);
    for (const auto& c : rep.curves) {
      for (std::size_t i = 0; i < c.image.size(); i += 37) {
        // Mirror of every image sample lies on the image set.
        double best = 1e300;
        for (const auto& d : rep.curves)
          for (const auto& p : d.image)
            best = std::min(best, std::hypot(p.rho - c.image[i].rho,
                                             p.z + c.image[i].z));
        EXPECT_LT(best, 2e-2);
      }
    }
    auto mirrored = [](const HalfSectionPoint& a,
                       const std::vector<HalfSectionPoint>& pts) {
      return std::any_of(pts.begin(), pts.end(), [&](const HalfSectionPoint& b) {
        return std::hypot(a.rho - b.rho, a.z + b.z) < 1e-6;
      });
    };
    std::vector<HalfSectionPoint> cusp_pts, node_pts;
    for (const auto& c : rep.cusps()) cusp_pts.push_back(c.location);
    for (const auto& n : rep.nodes) node_pts.push_back(n.location);
    for (const auto& p : cusp_pts) EXPECT_TRUE(mirrored(p, cusp_pts));
    for (const auto& p : node_pts) EXPECT_TRUE(mirrored(p, node_pts));
  }
}

TEST(Features, CountsStableWhenSamplingDoubles) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  int tested = 0;
  while (tested < 12) {
    const Geometry g(1.0, u(rng), u(rng), 1.0);
    if (nearest_boundary_distance(g).distance < 1e-2 ||
        std::abs(g.d3 - 1.0) < 1e-2)
      continue;
    ++tested;
    TraceOptions a, b;
    a.n_samples = 2000;
    b.n_samples = 4000;
    const auto ca = count_features(g, a).count;
    const auto cb = count_features(g, b).count;
    EXPECT_EQ(ca.n_cusps, cb.n_cusps) << g.d3 << "," << g.d4;
    EXPECT_EQ(ca.n_nodes, cb.n_nodes) << g.d3 << "," << g.d4;
    EXPECT_TRUE(ca.n_cusps == 0 || ca.n_cusps == 2 || ca.n_cusps == 4);
  }
}

TEST(Aspects, TwoForTheAnchorGeometry) {
  EXPECT_EQ(aspect_count(kAnchor, 512), 2);
  EXPECT_EQ(aspect_count(kAnchor, 1024), 2);
}

TEST(Aspects, AtLeastTwoWithSingularLines) {
  EXPECT_GE(aspect_count(Geometry(1.0, 0.5, 1.5, 1.0)), 2);
}

TEST(Aspects, CoarseGridThrows) {
  EXPECT_THROW(aspect_count(kAnchor, 63), std::invalid_argument);
}

TEST(Probes, FourSolutionsInsideTwoOutside) {
  const auto rep = count_features(kAnchor);
  const auto in = interior_probe(rep);
  const auto out = exterior_probe(rep);
  ASSERT_TRUE(in.has_value());
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(ik_count_at(kAnchor, *in), 4);
  EXPECT_EQ(ik_count_at(kAnchor, *out), 2);
  EXPECT_EQ(oracle::ik_count(1.0, 2.0, 1.5, 1.0, in->rho, in->z), 4);
  EXPECT_EQ(oracle::ik_count(1.0, 2.0, 1.5, 1.0, out->rho, out->z), 2);
}

TEST(Probes, HoleInsideDomainOneInternalBoundary) {
  const Geometry g(1.0, 2.0, 0.1, 1.0);
  const auto in = interior_probe(count_features(g));
  ASSERT_TRUE(in.has_value());
  EXPECT_EQ(ik_count_at(g, *in), 0);
  EXPECT_EQ(oracle::ik_count(1.0, 2.0, 0.1, 1.0, in->rho, in->z), 0);
}
