#include "sdperc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdperc/coloring.hpp"
#include "sdperc/error.hpp"

namespace sdperc {

namespace {

void require_size(int L) {
  if (L < 2) throw UsageError("L must be at least 2");
}

void require_trials(std::int64_t trials) {
  if (trials < 1) throw UsageError("trials must be at least 1");
}

}  // namespace

CriticalEstimate crossing_from_thresholds(const std::vector<double>& sorted, double tol,
                                          std::int64_t trials) {
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  require_trials(trials);
  auto F = [&](double q) { return fraction_below(sorted, q); };
  double lo = 0.0, hi = 1.0;
  if (F(lo) >= 0.5 || F(hi) < 0.5)
    throw NumericalError("crossing of 1/2 is not bracketed by [0,1] (F(0) = " +
                         format_real(F(lo)) + ", F(1) = " + format_real(F(hi)) + ")");
  CriticalEstimate est;
  while (hi - lo >= tol) {
    if (est.steps == kMaxBisectionSteps)
      throw NumericalError("bisection did not reach tol " + format_real(tol) + " in " +
                           std::to_string(kMaxBisectionSteps) + " steps");
    double mid = 0.5 * (lo + hi);
    (F(mid) >= 0.5 ? hi : lo) = mid;
    ++est.steps;
  }
  est.lower = lo;
  est.upper = hi;
  est.value = 0.5 * (lo + hi);

  const double a = std::max(0.0, est.value - kSlopeHalfWidth);
  const double b = std::min(1.0, est.value + kSlopeHalfWidth);
  const double slope = (F(b) - F(a)) / (b - a);
  const double sigma = 0.5 / std::sqrt(static_cast<double>(trials));
  const double stat = slope > 0.0 ? sigma / slope : kSlopeHalfWidth;
  const double half = 0.5 * (hi - lo);
  est.uncertainty = std::sqrt(half * half + stat * stat);
  return est;
}

CriticalEstimate estimate_pc(LatticeKind kind, int L, std::int64_t trials, double tol,
                             std::uint64_t seed, unsigned threads) {
  require_size(L);
  require_trials(trials);
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  FiniteGraph g = build_box(kind, L);
  std::vector<double> th = p_thresholds(g, seed, trials, CrossingEvent::Spanning, threads);
  std::sort(th.begin(), th.end());
  CriticalEstimate est = crossing_from_thresholds(th, tol, trials);
  est.kind = kind;
  est.sizes = {L};
  return est;
}

CriticalEstimate estimate_delta_c(LatticeKind kind, double p, int L, std::int64_t trials,
                                  double tol, std::uint64_t seed, const DeltaCOptions& options) {
  require_size(L);
  require_trials(trials);
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("p must lie in [0,1]");
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  if (options.p_c && p < *options.p_c)
    throw UsageError("p = " + format_real(p) + " is below the critical estimate " +
                     format_real(*options.p_c));
  FiniteGraph g = build_box(kind, L);
  std::vector<double> th =
      delta_thresholds(g, p, seed, trials, options.proxy, options.event, options.threads);
  std::sort(th.begin(), th.end());
  CriticalEstimate est = crossing_from_thresholds(th, tol, trials);
  est.kind = kind;
  est.sizes = {L};
  return est;
}

DeltaCurve delta_curve(LatticeKind kind, const std::vector<double>& p_grid, int L,
                       std::int64_t trials, double tol, std::uint64_t seed,
                       const DeltaCOptions& options) {
  DeltaCurve curve{kind, L, trials, p_grid, {}};
  for (double p : p_grid) curve.delta_c.push_back(estimate_delta_c(kind, p, L, trials, tol, seed, options));
  return curve;
}

Table bound_report(LatticeKind kind, const std::vector<double>& p_grid,
                   const std::vector<int>& sizes, std::int64_t trials, std::uint64_t seed,
                   const BoundReportOptions& options) {
  if (p_grid.empty() || sizes.empty()) throw UsageError("bound report needs p and L values");
  for (double p : p_grid)
    if (!(p > 0.0 && p <= 1.0)) throw UsageError("p values must lie in (0,1]");
  for (int L : sizes) require_size(L);
  require_trials(trials);

  Table table;
  table.columns = {"lattice",  "L",          "p",         "pc_hat",      "pc_unc",
                   "deltac_hat", "deltac_unc", "lb_gap",   "lb_gap_ok",   "lb_gap_exceeds_pc",
                   "lb_lemma", "lb_lemma_ok", "ub_pc",     "ub_ok",       "delta_sub",
                   "span_sub", "span_sub_se", "span_sub_decreasing"};

  std::vector<CriticalEstimate> pc;
  for (int L : sizes) pc.push_back(estimate_pc(kind, L, trials, options.tol, seed, options.threads));
  // The subcritical-product check holds delta fixed across L, so it uses the
  // estimate at the largest size.
  const auto largest = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  const double pc_ref = pc[largest].value;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int degree = build_box(kind, 8).degree();  // bulk degree

  for (double p : p_grid) {
    const double delta_sub = 1.0 - (pc_ref + kSupercriticalMargin) / p;
    std::vector<Estimate> span(sizes.size());
    bool decreasing = delta_sub > 0.0;
    for (std::size_t k = 0; k < sizes.size() && delta_sub > 0.0; ++k) {
      FiniteGraph g = build_box(kind, sizes[k]);
      span[k] = spanning_hat(g, {p, delta_sub, seed, trials}, options.proxy, options.threads);
      if (k > 0 && !(span[k].value < span[k - 1].value)) decreasing = false;
    }

    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const double pcv = pc[k].value;
      double dc = nan, dc_unc = nan;
      if (p >= pcv) {
        DeltaCOptions dco{options.proxy, options.event, pcv, options.threads};
        CriticalEstimate e = estimate_delta_c(kind, p, sizes[k], trials, options.tol, seed, dco);
        dc = e.value;
        dc_unc = e.uncertainty;
      }
      const double combined = std::sqrt(dc_unc * dc_unc + std::pow(pc[k].uncertainty / p, 2));
      const double lb_gap = (p - pcv) / p;
      double lb_lemma = 0.0;
      if (p < 1.0 && pcv > 0.0 && pcv < 1.0) {
        LemmaConstant c = lemma_constant((1.0 - p) / 2.0, pcv, degree);
        lb_lemma = (p - pcv) / (p * c.d * c.c_epsilon);
      }
      const bool have = !std::isnan(dc);
      table.add_row({std::string(to_string(kind)), std::to_string(sizes[k]), format_real(p),
                     format_real(pcv), format_real(pc[k].uncertainty), format_real(dc),
                     format_real(dc_unc), format_real(lb_gap),
                     format_flag(have && dc >= lb_gap - 2.0 * combined),
                     format_flag(lb_gap > pcv), format_real(lb_lemma),
                     format_flag(have && dc >= lb_lemma - 2.0 * combined), format_real(pcv),
                     format_flag(have && dc <= pcv + kSupercriticalMargin),
                     format_real(delta_sub > 0.0 ? delta_sub : nan),
                     format_real(delta_sub > 0.0 ? span[k].value : nan),
                     format_real(delta_sub > 0.0 ? span[k].std_error : nan),
                     format_flag(decreasing)});
    }
  }
  return table;
}

}  // namespace sdperc
