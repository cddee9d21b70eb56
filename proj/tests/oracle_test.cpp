#include <cmath>

#include "doctest.h"
#include "sdperc/error.hpp"
#include "sdperc/oracle.hpp"

using namespace sdperc;
using Index = FiniteGraph::Index;

TEST_CASE("total mass is one") {
  for (LatticeKind k : {LatticeKind::SquareSite, LatticeKind::ChessBoard}) {
    FiniteGraph g = build_box(k, 3);
    for (double p : {0.0, 0.3, 1.0}) {
      ExactResult a = enumerate_event(g, p, 0.4, InfinityProxy::SpansOpposite, OracleEvent::Always);
      CHECK(std::abs(a.probability - 1.0) < 1e-12);
      CHECK(a.configurations == (std::uint64_t{1} << 18));
      ExactResult b = enumerate_event_recursive(g, p, 0.4, InfinityProxy::SpansOpposite, OracleEvent::Always);
      CHECK(std::abs(b.probability - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("single site under the touching proxy") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 1);
  for (double delta : {0.0, 0.25, 0.9}) {
    CHECK(enumerate_event(g, 0.7, delta, InfinityProxy::TouchesBoundary, OracleEvent::OriginOccupied)
              .probability == doctest::Approx(delta).epsilon(1e-14));
    CHECK(enumerate_event_recursive(g, 0.7, delta, InfinityProxy::TouchesBoundary,
                                    OracleEvent::OriginOccupied)
              .probability == doctest::Approx(delta).epsilon(1e-14));
  }
}

TEST_CASE("events and complements partition the space") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 3);
  for (OracleEvent ev : {OracleEvent::Theta, OracleEvent::Spanning, OracleEvent::OriginOccupied}) {
    double a = enumerate_event(g, 0.6, 0.2, InfinityProxy::SpansOpposite, ev).probability;
    double b = enumerate_event(
                   g, 0.6, 0.2, InfinityProxy::SpansOpposite,
                   [ev](const FiniteGraph& gg, const SdpSample& s) {
                     bool hit = ev == OracleEvent::Theta      ? origin_reaches_boundary(gg, s.z)
                                : ev == OracleEvent::Spanning ? spans_left_right(gg, s.z)
                                                              : s.z[static_cast<std::size_t>(gg.origin())];
                     return !hit;
                   },
                   "complement")
                   .probability;
    CHECK(std::abs(a + b - 1.0) < 1e-12);
  }
}

TEST_CASE("both enumerations agree") {
  for (LatticeKind k : {LatticeKind::SquareSite, LatticeKind::ChessBoard, LatticeKind::TriangularSite}) {
    FiniteGraph g = build_box(k, 3);
    for (double p : {0.3, 0.6})
      for (double delta : {0.1, 0.5})
        for (InfinityProxy proxy : {InfinityProxy::SpansOpposite, InfinityProxy::TouchesBoundary})
          for (OracleEvent ev : {OracleEvent::Theta, OracleEvent::Spanning, OracleEvent::OriginOccupied}) {
            double a = enumerate_event(g, p, delta, proxy, ev).probability;
            double b = enumerate_event_recursive(g, p, delta, proxy, ev).probability;
            CHECK(std::abs(a - b) < 1e-12);
          }
  }
}

TEST_CASE("a single site spans its own box") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 1);
  double v = enumerate_event(g, 0.4, 0.3, InfinityProxy::SpansOpposite, OracleEvent::OriginOccupied).probability;
  // A single site spans its box, so X* is empty and Z = Y.
  CHECK(v == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("size limit") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 4);
  CHECK_THROWS_AS(enumerate_event(g, 0.5, 0.5, InfinityProxy::SpansOpposite, OracleEvent::Theta),
                  NumericalError);
  CHECK_THROWS_AS(enumerate_event_recursive(g, 0.5, 0.5, InfinityProxy::SpansOpposite, OracleEvent::Theta),
                  NumericalError);
  CHECK_THROWS_AS(enumerate_event(build_box(LatticeKind::SquareSite, 2), 1.5, 0.5,
                                  InfinityProxy::SpansOpposite, OracleEvent::Theta),
                  UsageError);
}

TEST_CASE("conditional Y law on patches") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 7);
  const Index v = g.origin();
  std::vector<Index> far{g.at({0, 0}), g.at({6, 6})};
  std::vector<std::uint8_t> pat{1, 0};
  CHECK(enumerate_conditional(g, v, far, pat, 0.6, 0.1).conditional ==
        doctest::Approx(0.1).epsilon(1e-13));

  std::vector<Index> near{g.at({4, 4}), g.at({2, 3})};
  std::vector<std::uint8_t> forced{1, 0};
  CHECK(enumerate_conditional(g, v, near, forced, 0.6, 0.1).joint_y1 == 0.0);

  std::vector<std::uint8_t> vacant{0, 0};
  ConditionalResult r = enumerate_conditional(g, v, near, vacant, 0.6, 0.1);
  CHECK(r.conditional <= 0.1 / (0.9 * std::pow(0.4, 8)));
  CHECK(r.conditional > 0.1);

  CHECK_THROWS_AS(enumerate_conditional(g, v, near, forced, 0.0, 0.1), NumericalError);
  CHECK_THROWS_AS(enumerate_conditional(g, v, near, std::vector<std::uint8_t>{1}, 0.6, 0.1),
                  UsageError);
}

TEST_CASE("event names") {
  for (OracleEvent e : {OracleEvent::Always, OracleEvent::Theta, OracleEvent::Spanning,
                        OracleEvent::OriginOccupied})
    CHECK(parse_oracle_event(to_string(e)) == e);
  CHECK_THROWS_AS(parse_oracle_event("cluster"), UsageError);
}
