#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "sdperc/error.hpp"
#include "sdperc/estimator.hpp"

using namespace sdperc;

TEST_CASE("crossing of a known step distribution") {
  std::vector<double> th;
  for (int i = 0; i < 1000; ++i) th.push_back(0.3 + 0.2 * i / 999.0);
  std::sort(th.begin(), th.end());
  CriticalEstimate e = crossing_from_thresholds(th, 1e-4, 1000);
  CHECK(std::abs(e.value - 0.4) < 1e-3);
  CHECK(e.upper - e.lower < 1e-4);
  CHECK(e.uncertainty > 0.0);
  CHECK(e.steps <= kMaxBisectionSteps);
}

TEST_CASE("crossing errors") {
  std::vector<double> never(10, 2.0);
  CHECK_THROWS_AS(crossing_from_thresholds(never, 0.01, 10), NumericalError);
  std::vector<double> always(10, -1.0);
  CHECK_THROWS_AS(crossing_from_thresholds(always, 0.01, 10), NumericalError);
  std::vector<double> mid(10, 0.5);
  CHECK_THROWS_AS(crossing_from_thresholds(mid, 0.0, 10), UsageError);
  CHECK_THROWS_AS(crossing_from_thresholds(mid, 1e-30, 10), NumericalError);
}

TEST_CASE("bisection agrees with direct crossing search") {
  FiniteGraph g = build_box(LatticeKind::SquareSite, 16);
  CriticalEstimate e = estimate_pc(LatticeKind::SquareSite, 16, 400, 1e-3, 3);
  // The direct estimate at the bracket ends straddles 1/2.
  CHECK(percolation_spanning_hat(g, e.lower, 400, 3).value < 0.5);
  CHECK(percolation_spanning_hat(g, e.upper, 400, 3).value >= 0.5);
}

TEST_CASE("delta_c bracket straddles the crossing under common random numbers") {
  FiniteGraph g = build_box(LatticeKind::ChessBoard, 16);
  CriticalEstimate e = estimate_delta_c(LatticeKind::ChessBoard, 0.6, 16, 400, 1e-3, 4);
  CHECK(spanning_hat(g, {0.6, e.lower, 4, 400}, InfinityProxy::SpansOpposite).value < 0.5);
  CHECK(spanning_hat(g, {0.6, e.upper, 4, 400}, InfinityProxy::SpansOpposite).value >= 0.5);
  CHECK(e.value >= 0.0);
  CHECK(e.value <= 1.0);
}

TEST_CASE("delta_c preconditions") {
  DeltaCOptions o;
  o.p_c = 0.5;
  CHECK_THROWS_AS(estimate_delta_c(LatticeKind::ChessBoard, 0.4, 8, 10, 0.01, 1, o), UsageError);
  CHECK_THROWS_AS(estimate_delta_c(LatticeKind::ChessBoard, 0.6, 8, 10, 0.0, 1), UsageError);
  CHECK_THROWS_AS(estimate_pc(LatticeKind::ChessBoard, 1, 10, 0.01, 1), UsageError);
}

TEST_CASE("threads do not change estimates") {
  CriticalEstimate a = estimate_pc(LatticeKind::TriangularSite, 16, 300, 1e-3, 9, 1);
  CriticalEstimate b = estimate_pc(LatticeKind::TriangularSite, 16, 300, 1e-3, 9, 4);
  CHECK(a.value == b.value);
  CHECK(a.uncertainty == b.uncertainty);
}

TEST_CASE("delta curve") {
  DeltaCurve c = delta_curve(LatticeKind::ChessBoard, {0.6, 0.8}, 12, 200, 0.01, 2);
  REQUIRE(c.delta_c.size() == 2);
  for (const auto& e : c.delta_c) {
    CHECK(e.value >= 0.0);
    CHECK(e.value <= 1.0);
  }
}

TEST_CASE("bound report layout") {
  Table t = bound_report(LatticeKind::ChessBoard, {0.3, 0.7, 1.0}, {8, 16}, 200, 1);
  CHECK(t.columns.size() == 18);
  CHECK(t.rows.size() == 6);
  // p = 0.3 lies below the critical estimate: no delta_c there.
  CHECK(t.rows[0][5] == "nan");
  CHECK(t.rows[0][8] == "0");
  CHECK(t.rows[2][5] != "nan");
  // At p = 1 the gap bound equals 1 - pc and the lemma bound is zero.
  CHECK(t.rows[4][10] == "0");
  CHECK_THROWS_AS(bound_report(LatticeKind::ChessBoard, {}, {8}, 10, 1), UsageError);
}
