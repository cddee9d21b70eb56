#include <deque>

#include "doctest.h"
#include "sdperc/catastrophe.hpp"
#include "sdperc/error.hpp"
#include "sdperc/rng.hpp"
#include "sdperc/sdp.hpp"

using namespace sdperc;
using Index = FiniteGraph::Index;

namespace {

// Component ids by plain BFS, -1 for vacant sites.
std::vector<int> bfs_components(const FiniteGraph& g, const Config& c) {
  std::vector<int> comp(g.vertex_count(), -1);
  int next = 0;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (!c[s] || comp[s] >= 0) continue;
    std::deque<Index> q{static_cast<Index>(s)};
    comp[s] = next;
    while (!q.empty()) {
      Index v = q.front();
      q.pop_front();
      for (Index u : g.neighbors(v))
        if (c[static_cast<std::size_t>(u)] && comp[static_cast<std::size_t>(u)] < 0) {
          comp[static_cast<std::size_t>(u)] = next;
          q.push_back(u);
        }
    }
    ++next;
  }
  return comp;
}

Config from_mask(const FiniteGraph& g, std::uint32_t mask) {
  Config c(g);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) c.set(i, (mask >> i) & 1U);
  return c;
}

}  // namespace

TEST_CASE("labels on trivial configurations") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 4);
  CHECK(label_clusters(g, Config(g)).cluster_count() == 0);

  ClusterLabels full = label_clusters(g, Config(g, 1));
  REQUIRE(full.cluster_count() == 1);
  CHECK(full.size[static_cast<std::size_t>(full.roots[0])] == 16);
  CHECK(full.flags_of(0) == side_bits::kAny);

  Config checker(g);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    Vertex v = g.vertex(static_cast<Index>(i));
    checker.set(i, (v.x + v.y) % 2 == 0);
  }
  ClusterLabels cl = label_clusters(g, checker);
  CHECK(cl.cluster_count() == 8);
  for (Index r : cl.roots) CHECK(cl.size[static_cast<std::size_t>(r)] == 1);
}

TEST_CASE("labels agree with breadth-first search") {
  Stream rng(11, 0, FieldTag::Walk);
  for (LatticeKind k : kAllLatticeKinds) {
    for (int rep = 0; rep < 1000; ++rep) {
      int L = 2 + static_cast<int>(rng.below(7));
      FiniteGraph g = build_box(k, L);
      double q = rng.uniform();
      Config c(g);
      for (std::size_t i = 0; i < g.vertex_count(); ++i) c.set(i, rng.uniform() < q);
      ClusterLabels cl = label_clusters(g, c);
      std::vector<int> comp = bfs_components(g, c);
      int mismatches = 0;
      for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (cl.occupied(static_cast<Index>(i)) != c[i]) ++mismatches;
        if (!c[i]) continue;
        std::uint8_t flags = 0;
        for (std::size_t j = 0; j < g.vertex_count(); ++j) {
          if (!c[j]) continue;
          if ((cl.root[i] == cl.root[j]) != (comp[i] == comp[j])) ++mismatches;
          if (comp[j] == comp[i]) flags |= g.boundary_flags(static_cast<Index>(j));
        }
        if (cl.flags_of(static_cast<Index>(i)) != flags) ++mismatches;
      }
      REQUIRE(mismatches == 0);
    }
  }
}

TEST_CASE("proxies") {
  using namespace side_bits;
  CHECK(is_infinite(kLeft | kRight, InfinityProxy::SpansOpposite));
  CHECK(is_infinite(kBottom | kTop, InfinityProxy::SpansOpposite));
  CHECK_FALSE(is_infinite(kLeft | kTop, InfinityProxy::SpansOpposite));
  CHECK(is_infinite(kLeft, InfinityProxy::TouchesBoundary));
  CHECK_FALSE(is_infinite(0, InfinityProxy::TouchesBoundary));
  for (unsigned f = 0; f < 16; ++f)
    if (is_infinite(static_cast<std::uint8_t>(f), InfinityProxy::SpansOpposite))
      CHECK(is_infinite(static_cast<std::uint8_t>(f), InfinityProxy::TouchesBoundary));
  CHECK(parse_infinity_proxy("spans") == InfinityProxy::SpansOpposite);
  CHECK(parse_infinity_proxy("touches") == InfinityProxy::TouchesBoundary);
  CHECK_THROWS_AS(parse_infinity_proxy("wraps"), UsageError);
}

TEST_CASE("destroy examples") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 5);
  Config x(g);
  x.set(static_cast<std::size_t>(g.at({2, 2})), true);
  CHECK(destroy(g, x) == x);
  CHECK(destroy(g, Config(g, 1)).count() == 0);

  Config row(g);
  for (int xx = 0; xx < 5; ++xx) row.set(static_cast<std::size_t>(g.at({xx, 1})), true);
  row.set(static_cast<std::size_t>(g.at({2, 3})), true);
  Config star = destroy(g, row);
  CHECK(star.count() == 1);
  CHECK(star[static_cast<std::size_t>(g.at({2, 3}))]);

  // Two disjoint spanning rows are both removed.
  Config two(g);
  for (int xx = 0; xx < 5; ++xx) {
    two.set(static_cast<std::size_t>(g.at({xx, 0})), true);
    two.set(static_cast<std::size_t>(g.at({xx, 3})), true);
  }
  CHECK(destroy(g, two).count() == 0);
}

TEST_CASE("destroy is idempotent and below X, exhaustively on small boxes") {
  for (LatticeKind k : {LatticeKind::SquareSite, LatticeKind::StarSquareSite,
                        LatticeKind::TriangularSite}) {
    for (int L = 1; L <= 4; ++L) {
      FiniteGraph g = build_box(k, L);
      const std::uint32_t masks = 1U << g.vertex_count();
      for (InfinityProxy proxy : {InfinityProxy::SpansOpposite, InfinityProxy::TouchesBoundary}) {
        for (std::uint32_t m = 0; m < masks; ++m) {
          Config x = from_mask(g, m);
          Config once = destroy(g, x, proxy);
          REQUIRE(pointwise_leq(once, x));
          REQUIRE(destroy(g, once, proxy) == once);
        }
      }
    }
  }
}

TEST_CASE("touching-boundary destruction leaves no cluster on the boundary") {
  Stream rng(5, 0, FieldTag::Walk);
  for (LatticeKind k : kAllLatticeKinds) {
    FiniteGraph g = build_box(k, 12);
    for (int rep = 0; rep < 50; ++rep) {
      Config x(g);
      for (std::size_t i = 0; i < g.vertex_count(); ++i) x.set(i, rng.uniform() < 0.55);
      Config star = destroy(g, x, InfinityProxy::TouchesBoundary);
      ClusterLabels cl = label_clusters(g, star);
      for (Index r : cl.roots) CHECK(cl.flags[static_cast<std::size_t>(r)] == 0);
    }
  }
}

TEST_CASE("connects") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 4);
  std::vector<Index> o{g.origin()};
  Config c(g);
  c.set(static_cast<std::size_t>(g.origin()), true);
  CHECK(connects(g, c, o, o));
  auto left = g.boundary(Side::Left);
  auto right = g.boundary(Side::Right);
  CHECK_FALSE(connects(g, Config(g), left, right));
  CHECK_FALSE(connects(g, c, std::vector<Index>{}, o));

  Config row(g);
  for (int xx = 0; xx < 4; ++xx) row.set(static_cast<std::size_t>(g.at({xx, 2})), true);
  CHECK(connects(g, row, left, right));
  CHECK(spans_left_right(g, row));
  CHECK(origin_reaches_boundary(g, row));
  CHECK_FALSE(origin_reaches_boundary(g, c));
}
