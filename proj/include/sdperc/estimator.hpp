#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdperc/catastrophe.hpp"
#include "sdperc/lattice.hpp"
#include "sdperc/sdp.hpp"
#include "sdperc/table.hpp"

namespace sdperc {

inline constexpr int kMaxBisectionSteps = 60;
inline constexpr double kSupercriticalMargin = 0.03;
inline constexpr double kSlopeHalfWidth = 0.02;

struct CriticalEstimate {
  LatticeKind kind = LatticeKind::SquareSite;
  std::vector<int> sizes;
  double value = 0.0;
  double uncertainty = 0.0;
  double lower = 0.0;  // final bisection bracket
  double upper = 1.0;
  std::string method = "crossing-bisection";
  int steps = 0;
};

// 1/2-crossing of F(q) = fraction of thresholds below q, by bisection on
// [0,1] until the bracket is narrower than tol. Uncertainty combines half the
// bracket with the binomial error at the crossing divided by the local slope
// of F. Throws NumericalError if 1/2 is not bracketed or the cap is hit.
CriticalEstimate crossing_from_thresholds(const std::vector<double>& sorted_thresholds,
                                          double tol, std::int64_t trials);

// Plain percolation (no destruction, no enhancement): crossing of the
// left-right spanning probability in p.
CriticalEstimate estimate_pc(LatticeKind kind, int L, std::int64_t trials, double tol,
                             std::uint64_t seed, unsigned threads = 1);

struct DeltaCOptions {
  InfinityProxy proxy = InfinityProxy::SpansOpposite;
  CrossingEvent event = CrossingEvent::Spanning;
  std::optional<double> p_c;  // when set, p < p_c is rejected
  unsigned threads = 1;
};

// Crossing in delta of the Z event at fixed (p, L), with common random
// numbers across delta.
CriticalEstimate estimate_delta_c(LatticeKind kind, double p, int L, std::int64_t trials,
                                  double tol, std::uint64_t seed, const DeltaCOptions& options = {});

struct DeltaCurve {
  LatticeKind kind = LatticeKind::SquareSite;
  int L = 0;
  std::int64_t trials = 0;
  std::vector<double> p;
  std::vector<CriticalEstimate> delta_c;
};

DeltaCurve delta_curve(LatticeKind kind, const std::vector<double>& p_grid, int L,
                       std::int64_t trials, double tol, std::uint64_t seed,
                       const DeltaCOptions& options = {});

struct BoundReportOptions {
  double tol = 0.005;
  InfinityProxy proxy = InfinityProxy::SpansOpposite;
  CrossingEvent event = CrossingEvent::Spanning;
  unsigned threads = 1;
};

// One row per (L, p). Columns, in order:
//   lattice, L, p, pc_hat, pc_unc, deltac_hat, deltac_unc,
//   lb_gap, lb_gap_ok, lb_gap_exceeds_pc,
//   lb_lemma, lb_lemma_ok, ub_pc, ub_ok,
//   delta_sub, span_sub, span_sub_se, span_sub_decreasing
// lb_gap = (p - pc)/p and lb_lemma = (p - pc)/(p d c_eps) with eps = (1-p)/2;
// the *_ok flags compare deltac_hat against them allowing twice the combined
// uncertainty, and ub_ok checks deltac_hat <= pc + 0.03. delta_sub solves
// p(1 - delta) = pc + 0.03; span_sub is the Z spanning frequency there, and
// span_sub_decreasing says whether it falls strictly along the L list. Rows
// with p < pc leave the delta_c cells as nan and the flags at 0.
Table bound_report(LatticeKind kind, const std::vector<double>& p_grid,
                   const std::vector<int>& sizes, std::int64_t trials, std::uint64_t seed,
                   const BoundReportOptions& options = {});

}  // namespace sdperc
