#include <gtest/gtest.h>

#include <set>

#include "cntpf/errors.hpp"
#include "cntpf/fem/benchmarks.hpp"
#include "cntpf/fem/mesh.hpp"

using namespace cntpf;
using namespace cntpf::fem;

namespace {

double signed_area(const Mesh& m, int e) {
  double a = 0;
  for (int k = 0; k < 4; ++k) {
    const auto& p = m.nodes[m.elements[e][k]];
    const auto& q = m.nodes[m.elements[e][(k + 1) % 4]];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

double total_area(const Mesh& m) {
  double a = 0;
  for (int e = 0; e < m.num_elements(); ++e) a += signed_area(m, e);
  return a;
}

}  // namespace

TEST(Mesh, StructuredRectangle) {
  const Mesh m = structured_rectangle(4.0, 2.0, 4, 2);
  EXPECT_EQ(m.num_nodes(), 15);
  EXPECT_EQ(m.num_elements(), 8);
  EXPECT_EQ(m.node_set("left").size(), 3u);
  EXPECT_EQ(m.node_set("top").size(), 5u);
  EXPECT_NO_THROW(m.validate());
  EXPECT_NEAR(total_area(m), 8.0, 1e-14);
  EXPECT_NEAR(m.min_edge_length(), 1.0, 1e-14);
  EXPECT_THROW(m.node_set("nope"), DomainError);
}

TEST(Mesh, ValidateRejectsClockwiseElement) {
  Mesh m = structured_rectangle(2.0, 1.0, 2, 1);
  std::swap(m.elements[1][1], m.elements[1][3]);
  try {
    m.validate();
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(Mesh, ValidateRejectsOrphanNode) {
  Mesh m = structured_rectangle(1.0, 1.0, 1, 1);
  m.nodes.push_back({5.0, 5.0});
  EXPECT_THROW(m.validate(), DomainError);
}

TEST(Mesh, ChooseRoot) {
  const auto [root, levels] = choose_root(25.0, 2.4 / 7);
  EXPECT_LE(root / std::ldexp(1.0, levels), 2.4 / 7);
  EXPECT_NEAR(std::fmod(25.0, root), 0.0, 1e-12);
  // Largest admissible size among the candidates.
  EXPECT_GT(root / std::ldexp(1.0, levels), 0.5 * 2.4 / 7);
}

TEST(Quadtree, RefinesZoneAndBalances) {
  QuadtreeSpec spec;
  spec.width = 8;
  spec.height = 8;
  spec.root_size = 4;
  spec.zones.push_back(BoxZone{0.0, 1.0, 0.0, 1.0, 0.25});
  const Mesh m = quadtree_mesh(spec);
  EXPECT_NO_THROW(m.validate());
  EXPECT_NEAR(total_area(m), 64.0, 1e-12);
  EXPECT_NEAR(m.min_edge_length("refined"), 0.25, 1e-14);
  EXPECT_FALSE(m.hanging.empty());
  // 2:1 balance: a hanging node sits at the midpoint of its masters.
  for (const HangingNode& h : m.hanging) {
    const Eigen::Vector2d mid = 0.5 * (m.nodes[h.masters[0]] + m.nodes[h.masters[1]]);
    EXPECT_LT((m.nodes[h.node] - mid).norm(), 1e-12);
  }
}

TEST(Quadtree, NotchFacesDuplicated) {
  const Mesh m = generate_benchmark_mesh(BenchmarkCase::kSenTension);
  EXPECT_NO_THROW(m.validate());
  const auto& up = m.node_set("notch_upper");
  const auto& lo = m.node_set("notch_lower");
  ASSERT_EQ(up.size(), lo.size());
  ASSERT_FALSE(up.empty());
  std::set<std::pair<long, long>> upper_pos;
  for (int n : up) {
    EXPECT_NEAR(m.nodes[n].y(), 25.0, 1e-12);
    EXPECT_GT(m.nodes[n].x(), 25.0);
    upper_pos.insert({std::lround(m.nodes[n].x() * 1e6), std::lround(m.nodes[n].y() * 1e6)});
  }
  for (int n : lo) {
    EXPECT_TRUE(upper_pos.count({std::lround(m.nodes[n].x() * 1e6), std::lround(m.nodes[n].y() * 1e6)}));
    EXPECT_EQ(std::count(up.begin(), up.end(), n), 0);
  }
  // Elements above the notch use upper copies only.
  const std::set<int> lower(lo.begin(), lo.end());
  for (int e = 0; e < m.num_elements(); ++e) {
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (int a : m.elements[e]) c += 0.25 * m.nodes[a];
    if (c.y() > 25.0 && c.x() > 25.0)
      for (int a : m.elements[e]) EXPECT_FALSE(lower.count(a)) << "element " << e;
  }
  EXPECT_NEAR(total_area(m), 2500.0, 1e-9);
}

TEST(Quadtree, RefinedSizeResolvesLengthScale) {
  BenchmarkMeshOptions opt;
  const Mesh m = generate_benchmark_mesh(BenchmarkCase::kSenTension, opt);
  EXPECT_LE(m.max_edge_length("refined"), 2.4 / 7 + 1e-12);
  EXPECT_GT(m.num_elements(), 2000);
  EXPECT_LT(m.num_elements(), 6000);
}

TEST(Quadtree, HolesRemovedAndSnapped) {
  QuadtreeSpec spec;
  spec.width = 20;
  spec.height = 20;
  spec.root_size = 5;
  spec.holes.push_back(Hole{{10.0, 10.0}, 3.0, "hole"});
  spec.zones.push_back(RingZone{{10.0, 10.0}, 2.0, 4.0, 0.3});
  const Mesh m = quadtree_mesh(spec);
  EXPECT_NO_THROW(m.validate());
  for (const auto& x : m.nodes) EXPECT_GE((x - Eigen::Vector2d(10, 10)).norm(), 3.0 - 1e-9);
  const auto& ring = m.node_set("hole");
  ASSERT_GT(ring.size(), 20u);
  // Nodes just outside the circle stay put when snapping would distort a cell.
  int snapped = 0;
  for (int n : ring) {
    const double r = (m.nodes[n] - Eigen::Vector2d(10, 10)).norm();
    EXPECT_LE(r, 3.0 + 0.3);
    snapped += std::abs(r - 3.0) < 1e-9;
  }
  EXPECT_GT(snapped, static_cast<int>(ring.size()) / 2);
  for (int n : m.node_set("hole_upper")) EXPECT_GE(m.nodes[n].y(), 10.0 - 1e-9);
  // Polygonal hole: area close to the disc.
  EXPECT_NEAR(total_area(m), 400.0 - std::numbers::pi * 9.0, 0.5);
}

TEST(Quadtree, RejectsMisalignedNotch) {
  QuadtreeSpec spec;
  spec.width = 10;
  spec.height = 10;
  spec.root_size = 5;
  spec.notch = EdgeNotch{5.3, 0.0, 4.0};
  EXPECT_THROW(quadtree_mesh(spec), DomainError);
}

TEST(Benchmarks, FineRefinementElementCount) {
  BenchmarkMeshOptions opt;
  opt.refinement = MeshRefinement::kFine;
  const Mesh m = generate_benchmark_mesh(BenchmarkCase::kSenTension, opt);
  EXPECT_NEAR(m.num_elements(), 8532, 0.2 * 8532);
}

TEST(Benchmarks, HoledPlateSets) {
  const BenchmarkProblem p = make_benchmark(BenchmarkCase::kHoledPlate);
  EXPECT_NO_THROW(p.mesh.validate());
  EXPECT_FALSE(p.mesh.node_set("pin_upper_upper").empty());
  EXPECT_FALSE(p.mesh.node_set("pin_lower_lower").empty());
  EXPECT_FALSE(p.mesh.node_set("pin_collar").empty());
  // Cells snapped onto the hole are stretched a little.
  EXPECT_LE(p.mesh.max_edge_length("refined"), 1.5 * 0.9 / 7);
  for (int n : p.mesh.node_set("pin_upper_upper")) EXPECT_GE(p.mesh.nodes[n].y(), 100.0 - 1e-9);
}

TEST(Benchmarks, CaseNames) {
  for (auto c : {BenchmarkCase::kSenTension, BenchmarkCase::kSenShear, BenchmarkCase::kHoledPlate})
    EXPECT_EQ(benchmark_case_from_string(to_string(c)), c);
  EXPECT_THROW(benchmark_case_from_string("sen"), DomainError);
  EXPECT_EQ(mesh_refinement_from_string("fine"), MeshRefinement::kFine);
  EXPECT_THROW(mesh_refinement_from_string("medium"), DomainError);
}
