#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cpack/error.hpp"
#include "cpack/layout.hpp"
#include "fixtures.hpp"

using namespace cpack;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

LayoutProblem random_problem(std::mt19937_64& rng, int n, double rmin = 0.5, double rmax = 2.0) {
  EmbeddedGraph eg = fixtures::random_patch(rng, n);
  std::uniform_real_distribution<double> radius(rmin, rmax);
  std::vector<double> radii(eg.size());
  for (double& r : radii) r = radius(rng);
  return LayoutProblem(std::move(eg), std::move(radii));
}

}  // namespace

TEST(AngleSum, HexagonalWheelAtUnitRadii) {
  const LayoutProblem p = fixtures::wheel_problem(6);
  EXPECT_NEAR(angle_sum(0, ones(7), p), 2 * kPi, 1e-12);
}

TEST(AngleSum, FourWheelAtUnitRadii) {
  const LayoutProblem p = fixtures::wheel_problem(4);
  EXPECT_NEAR(angle_sum(0, ones(5), p), 4 * kPi / 3, 1e-12);
}

TEST(AngleSum, FourWheelClosedForm) {
  const LayoutProblem p = fixtures::wheel_problem(4);
  std::vector<double> radii = ones(5);
  radii[0] = std::sqrt(2.0) - 1.0;
  EXPECT_NEAR(angle_sum(0, radii, p), 2 * kPi, 1e-12);
}

TEST(AngleSum, DecreasesInOwnRadius) {
  const LayoutProblem p = fixtures::wheel_problem(5);
  std::vector<double> radii = ones(6);
  double previous = 1e9;
  for (double r = 0.05; r < 5.0; r *= 1.3) {
    radii[0] = r;
    const double s = angle_sum(0, radii, p);
    EXPECT_LT(s, previous);
    previous = s;
  }
}

TEST(LayoutProblem, InteriorAndFaces) {
  const LayoutProblem p = fixtures::wheel_problem(6);
  ASSERT_EQ(p.interior().size(), 1u);
  EXPECT_EQ(p.interior()[0], 0u);
  EXPECT_EQ(p.triangles().size(), 6u);
  EXPECT_EQ(p.faces_at(0).size(), 6u);
  EXPECT_EQ(p.faces_at(1).size(), 2u);
}

TEST(LayoutProblem, RejectsNonTriangulated) {
  const EmbeddedGraph g = fixtures::grid(3, 3);
  EXPECT_THROW(LayoutProblem(g, ones(9)), Error);
}

TEST(LayoutProblem, RejectsBadBoundaryRadius) {
  EmbeddedGraph eg = fixtures::wheel(6);
  std::vector<double> radii = ones(7);
  radii[3] = 0.0;
  EXPECT_THROW(LayoutProblem(eg, radii), Error);
  radii[3] = std::nan("");
  EXPECT_THROW(LayoutProblem(eg, radii), Error);
}

TEST(SolveRadii, HexagonalWheel) {
  const RadiiSolution s = solve_radii(fixtures::wheel_problem(6));
  EXPECT_NEAR(s.radii[0], 1.0, 1e-8);
  EXPECT_LE(s.residual, 1e-10);
  EXPECT_TRUE(s.warnings.empty());
}

TEST(SolveRadii, FourWheelClosedForm) {
  // 1 - 2/(r+1)^2 = 0
  const double oracle = std::sqrt(2.0) - 1.0;
  const RadiiSolution s = solve_radii(fixtures::wheel_problem(4));
  EXPECT_NEAR(s.radii[0], oracle, 1e-8);
}

TEST(SolveRadii, GeneralWheelClosedForm) {
  // center angle per face: sin(pi/k) = 1/(1+r)
  for (int k = 3; k <= 12; ++k) {
    const double oracle = 1.0 / std::sin(kPi / k) - 1.0;
    EXPECT_NEAR(solve_radii(fixtures::wheel_problem(k)).radii[0], oracle, 1e-8) << k;
  }
}

TEST(SolveRadii, UniformLabelsKeepUnitRadius) {
  for (double deg : {30.0, 60.0, 89.0}) {
    const RadiiSolution s = solve_radii(fixtures::wheel_problem(6, 1.0, deg));
    EXPECT_NEAR(s.radii[0], 1.0, 1e-8) << deg;
    EXPECT_TRUE(s.warnings.empty());
  }
}

TEST(SolveRadii, ObtuseLabelWarns) {
  const RadiiSolution s = solve_radii(fixtures::wheel_problem(6, 1.0, 100.0));
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_EQ(s.warnings[0], kObtuseLabelWarning);
  EXPECT_NEAR(s.radii[0], 1.0, 1e-8);
}

TEST(SolveRadii, NonConvergenceCarriesResidual) {
  std::mt19937_64 rng(7);
  EmbeddedGraph eg = fixtures::random_patch(rng, 30);
  const LayoutProblem p(eg, ones(eg.size()), {}, 1e-14, 1);
  try {
    solve_radii(p, std::vector<double>(p.interior().size(), 0.1));
    FAIL();
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_convergence);
    EXPECT_EQ(e.iterations(), 1);
    EXPECT_TRUE(std::isfinite(e.best_residual()));
  }
}

TEST(SolveRadii, HomogeneousInBoundaryScale) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const LayoutProblem p = random_problem(rng, 8 + trial * 2);
    const double s = 0.1 + trial;
    std::vector<double> scaled = p.boundary_radii();
    for (double& r : scaled) r *= s;
    const LayoutProblem q(p.embedding(), scaled);
    const RadiiSolution a = solve_radii(p), b = solve_radii(q);
    for (std::size_t v : p.interior()) EXPECT_NEAR(b.radii[v], s * a.radii[v], 1e-8 * s * a.radii[v]);
  }
}

TEST(SolveRadii, IndependentOfInitialRadii) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> start(0.05, 20.0);
  for (int trial = 0; trial < 15; ++trial) {
    const LayoutProblem p = random_problem(rng, 6 + trial);
    std::vector<double> init(p.interior().size());
    for (double& r : init) r = start(rng);
    const RadiiSolution a = solve_radii(p), b = solve_radii(p, init);
    for (std::size_t v : p.interior()) EXPECT_NEAR(a.radii[v], b.radii[v], 1e-8);
    EXPECT_LE(b.residual, 1e-10);
  }
}

TEST(SolveRadii, MonotoneInBoundaryRadius) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const LayoutProblem p = random_problem(rng, 10 + trial);
    const RadiiSolution base = solve_radii(p);
    std::vector<double> grown = p.boundary_radii();
    const std::size_t b = p.embedding().boundary()[trial % p.embedding().boundary().size()];
    grown[b] *= 1.5;
    const RadiiSolution more = solve_radii(LayoutProblem(p.embedding(), grown));
    for (std::size_t v : p.interior()) EXPECT_GE(more.radii[v], base.radii[v] - 1e-9);
  }
}

TEST(SolveRadii, InitialSizeChecked) {
  EXPECT_THROW(solve_radii(fixtures::wheel_problem(6), std::vector<double>{1.0, 1.0}), Error);
}

TEST(PlaceCenters, PennyStar) {
  const LayoutProblem p = fixtures::wheel_problem(6);
  const Placement pl = place_centers(p, ones(7));
  const Point c = pl.disks[0].center;
  for (std::size_t v = 1; v < 7; ++v) EXPECT_NEAR(distance(pl.disks[v].center, c), 2.0, 1e-12);
  EXPECT_LE(pl.closure_residual, 1e-12);
}

TEST(PlaceCenters, ThreeFourFiveTriangle) {
  const LayoutProblem p(fixtures::triangle(), {1.0, 2.0, 3.0});
  const Placement pl = place_centers(p, {1.0, 2.0, 3.0});
  EXPECT_NEAR(distance(pl.disks[0].center, pl.disks[1].center), 3.0, 1e-12);
  EXPECT_NEAR(distance(pl.disks[1].center, pl.disks[2].center), 5.0, 1e-12);
  EXPECT_NEAR(distance(pl.disks[0].center, pl.disks[2].center), 4.0, 1e-12);
  // ccw orientation
  EXPECT_GT(cross(pl.disks[1].center - pl.disks[0].center, pl.disks[2].center - pl.disks[0].center), 0.0);
}

TEST(PlaceCenters, UnsolvedRadiiDoNotClose) {
  const LayoutProblem p = fixtures::wheel_problem(6);
  std::vector<double> radii = ones(7);
  radii[0] = 0.5;
  try {
    place_centers(p, radii);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::inconsistent_layout);
  }
}

TEST(Pack, PennyStar) {
  const PackResult r = pack(fixtures::wheel_problem(6));
  ASSERT_EQ(r.disks.size(), 7u);
  EXPECT_NEAR(r.disks[0].r, 1.0, 1e-8);
  for (std::size_t v = 1; v < 7; ++v) EXPECT_NEAR(distance(r.disks[v].center, r.disks[0].center), 2.0, 1e-8);
  const LabeledContactGraph lg = extract_contact_graph(r.disks, 1e-7);
  EXPECT_EQ(lg.graph.edges.size(), 12u);
  EXPECT_TRUE(is_thin(r.disks, 1e-9).thin);
}

TEST(Pack, EdgeLengthsMatchLabels) {
  for (double deg : {0.0, 45.0, 80.0}) {
    const LayoutProblem p = fixtures::wheel_problem(7, 1.3, deg);
    const PackResult r = pack(p);
    const Graph& g = p.graph();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const Disk& a = r.disks[g.edges[e].u];
      const Disk& b = r.disks[g.edges[e].v];
      const double want = edge_length(a.r, b.r, p.labels()[e]);
      EXPECT_NEAR(distance(a.center, b.center), want, 1e-8 * want);
    }
  }
}

TEST(Pack, ExtractRecoversRandomPatches) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    const LayoutProblem p = random_problem(rng, 5 + trial, 0.9, 1.1);
    const PackResult r = pack(p);
    const RealizationReport rep = verify_realization(r.disks, p.labeled_graph(), 1e-7, 1e-6);
    EXPECT_TRUE(rep.pass) << (rep.defects.empty() ? "" : rep.defects[0].message);
    EXPECT_EQ(r.solution.iterations > 0 || p.interior().empty(), true);
  }
}
