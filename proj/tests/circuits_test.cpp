#include <string>

#include "doctest.h"
#include "sdperc/catastrophe.hpp"
#include "sdperc/circuits.hpp"
#include "sdperc/error.hpp"
#include "sdperc/rng.hpp"

using namespace sdperc;
using Index = FiniteGraph::Index;

namespace {

Config from_mask(const FiniteGraph& g, std::uint64_t mask) {
  Config c(g);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) c.set(i, (mask >> i) & 1U);
  return c;
}

Config random_config(const FiniteGraph& g, double q, Stream& rng) {
  Config c(g);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) c.set(i, rng.uniform() < q);
  return c;
}

// Occupied origin joined to the boundary iff no vacant matching circuit
// surrounds it; a vacant origin counts as enclosed.
int duality_violations(const FiniteGraph& g, const Config& c) {
  const bool connected = origin_reaches_boundary(g, c);
  const bool origin_on = c[static_cast<std::size_t>(g.origin())];
  const bool blocked = find_circuit(g, c, Adjacency::Matching, false).has_value();
  return connected == (origin_on && !blocked) ? 0 : 1;
}

}  // namespace

TEST_CASE("trivial configurations") {
  for (int L = 3; L <= 7; ++L) {
    FiniteGraph g = build_box(LatticeKind::SquareSite, L);
    auto c = find_circuit(g, Config(g), Adjacency::Primal, false);
    REQUIRE(c.has_value());
    CHECK_NOTHROW(validate_circuit(g, *c));
    CHECK_FALSE(find_circuit(g, Config(g, 1), Adjacency::Primal, false).has_value());
  }
  FiniteGraph small = build_box(LatticeKind::SquareSite, 2);
  CHECK_FALSE(find_circuit(small, Config(small), Adjacency::Primal, false).has_value());
}

TEST_CASE("circuit validation") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 5);
  auto ring = [&](std::vector<Vertex> vs) {
    Circuit c;
    for (Vertex v : vs) c.vertices.push_back(g.at(v));
    return c;
  };
  Circuit good = ring({{1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3}, {2, 3}, {1, 3}, {1, 2}});
  CHECK_NOTHROW(validate_circuit(g, good));
  CHECK_THROWS_AS(validate_circuit(g, ring({{1, 1}, {2, 1}})), UsageError);
  CHECK_THROWS_AS(validate_circuit(g, ring({{1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3}, {2, 3},
                                            {1, 3}, {1, 2}, {1, 1}})),
                  UsageError);
  CHECK_THROWS_AS(validate_circuit(g, ring({{1, 1}, {2, 1}, {3, 1}, {3, 3}, {1, 3}})), UsageError);
  // Closed and adjacent, but away from the origin.
  CHECK_THROWS_AS(validate_circuit(g, ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), UsageError);

  Circuit diag = ring({{1, 2}, {2, 1}, {3, 2}, {2, 3}});
  CHECK_THROWS_AS(validate_circuit(g, diag), UsageError);
  diag.adjacency = Adjacency::Matching;
  CHECK_NOTHROW(validate_circuit(g, diag));
  CHECK(strictly_inside(g, diag, g.origin()));
  CHECK(strictly_outside(g, diag, g.at({0, 0})));
  CHECK_FALSE(strictly_outside(g, diag, g.at({1, 2})));
}

TEST_CASE("duality is exact on every configuration of 4x4 boxes") {
  for (LatticeKind k : {LatticeKind::SquareSite, LatticeKind::StarSquareSite,
                        LatticeKind::TriangularSite}) {
    for (int L : {3, 4}) {
      FiniteGraph g = build_box(k, L);
      int violations = 0;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.vertex_count()); ++m)
        violations += duality_violations(g, from_mask(g, m));
      CHECK(violations == 0);
    }
  }
}

TEST_CASE("duality on random configurations of larger boxes") {
  Stream rng(2, 0, FieldTag::Walk);
  for (LatticeKind k : {LatticeKind::SquareSite, LatticeKind::StarSquareSite,
                        LatticeKind::TriangularSite, LatticeKind::HoneycombSite,
                        LatticeKind::StarHoneycombSite}) {
    int violations = 0;
    for (int rep = 0; rep < 2000; ++rep) {
      FiniteGraph g = build_box(k, 5 + static_cast<int>(rng.below(8)));
      violations += duality_violations(g, random_config(g, 0.3 + 0.4 * rng.uniform(), rng));
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("found circuits consist of sites in the requested state") {
  Stream rng(4, 0, FieldTag::Walk);
  for (LatticeKind k : kAllLatticeKinds) {
    FiniteGraph g = build_box(k, 11);
    for (int rep = 0; rep < 200; ++rep) {
      Config c = random_config(g, 0.6, rng);
      for (bool state : {true, false}) {
        auto circ = find_circuit(g, c, Adjacency::Primal, state);
        if (!circ) continue;
        for (Index v : circ->vertices) CHECK(c[static_cast<std::size_t>(v)] == state);
        CHECK(std::find(circ->vertices.begin(), circ->vertices.end(), g.origin()) ==
              circ->vertices.end());
      }
    }
  }
}

TEST_CASE("chess-board circuits translate to matching circuits") {
  Stream rng(6, 0, FieldTag::Walk);
  FiniteGraph g = build_box(LatticeKind::ChessBoard, 10);
  int checked = 0;
  for (int rep = 0; rep < 500; ++rep) {
    Config c = random_config(g, 0.65, rng);
    auto circ = find_circuit(g, c, Adjacency::Primal, true);
    if (!circ) continue;
    auto moved = translate(g, circ->vertices, {1, 0});
    if (!moved) continue;
    ++checked;
    const std::size_t n = moved->size();
    for (std::size_t i = 0; i < n; ++i)
      CHECK(g.matching_adjacent((*moved)[i], (*moved)[(i + 1) % n]));
    Point2 shifted = g.embed(g.index_of(tilde(g.vertex(g.origin()))));
    CHECK(polygon_contains(g, *moved, shifted));
  }
  CHECK(checked > 50);
}

TEST_CASE("separation: paths from inside to outside meet the circuit's neighbourhood") {
  Stream rng(8, 0, FieldTag::Walk);
  int cases = 0;
  while (cases < 10000) {
    FiniteGraph g = build_box(LatticeKind::StarSquareSite, 5 + static_cast<int>(rng.below(8)));
    auto circ = find_circuit(g, random_config(g, 0.55, rng), Adjacency::Primal, true);
    if (!circ) continue;
    std::vector<Index> path{g.origin()};
    while (!strictly_outside(g, *circ, path.back())) {
      auto nb = g.neighbors(path.back());
      path.push_back(nb[rng.below(nb.size())]);
    }
    REQUIRE(check_separation(g, *circ, path));
    ++cases;
  }
}

TEST_CASE("separation preconditions") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 7);
  Circuit c;
  for (Vertex v : std::vector<Vertex>{{2, 2}, {3, 2}, {4, 2}, {4, 3}, {4, 4}, {3, 4}, {2, 4}, {2, 3}})
    c.vertices.push_back(g.at(v));
  std::vector<Index> through{g.at({3, 3}), g.at({3, 2}), g.at({3, 1})};
  CHECK(check_separation(g, c, through));
  std::vector<Index> inside{g.at({3, 3})};
  CHECK_THROWS_AS(check_separation(g, c, inside), UsageError);
  std::vector<Index> gap{g.at({3, 3}), g.at({3, 1})};
  CHECK_THROWS_AS(check_separation(g, c, gap), UsageError);
}

TEST_CASE("translation and csv") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 5);
  std::vector<Index> s{g.at({1, 1}), g.at({3, 2})};
  auto t = translate(g, s, {1, 0});
  REQUIRE(t.has_value());
  CHECK(g.vertex((*t)[1]) == Vertex{4, 2});
  CHECK_FALSE(translate(g, s, {2, 0}).has_value());

  auto circ = find_circuit(g, Config(g), Adjacency::Primal, false);
  REQUIRE(circ.has_value());
  std::string csv = circuit_to_csv(g, *circ);
  CHECK(csv.rfind("step,x,y\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == circ->vertices.size() + 1);
}
