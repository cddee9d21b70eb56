#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sdperc/catastrophe.hpp"
#include "sdperc/circuits.hpp"
#include "sdperc/config.hpp"
#include "sdperc/lattice.hpp"
#include "sdperc/sdp.hpp"

namespace sdperc {

enum class RedVariant : std::uint8_t {
  Tilde,         // X_v = 1 and Y_{v+(1,0)} = 0
  Neighborhood,  // X_v = 1 and Y_u = 0 for every u in D_v
};

struct RedConfig {
  Config bits;
  RedVariant variant = RedVariant::Tilde;
};

// Kinds on which v -> v+(1,0) maps sites to sites.
bool has_tilde_map(LatticeKind kind);

// Sites whose tilde image leaves the box are never red. Throws UsageError
// for kinds without a tilde map.
RedConfig red_tilde(const FiniteGraph& graph, const Config& x, const Config& y);

// Boundary sites use their clipped D_v.
RedConfig red_neighborhood(const FiniteGraph& graph, const Config& x, const Config& y);

struct LemmaConstant {
  double epsilon = 0.0;
  double p_c = 0.0;
  int d = 0;
  double c_epsilon = 0.0;  // 1 / ((1 - p_c) * epsilon^d)
};

LemmaConstant lemma_constant(double epsilon, double p_c, int d);

// ---------------------------------------------------------------------------
// Exact laws of the neighbourhood colouring on a patch.
//
// Given Y, R_u is Bernoulli(p * clear_u) with clear_u = [Y = 0 on D_u], and the
// X_u are independent. Expanding prod_{r_u = 0} (1 - p clear_u) turns any
// pattern probability into an alternating sum over subsets B of the zeros of
// P(Y = 0 on the union of D_u, u in ones + B), which is a power of (1 - delta).

// P(R_u = pattern_u for u in sites). Sites must be distinct; at most 20 zeros.
double red_pattern_probability(const FiniteGraph& graph, std::span<const FiniteGraph::Index> sites,
                               std::span<const std::uint8_t> pattern, double p, double delta);

// P(Y_v = y_v and R_u = pattern_u for u in sites).
double red_pattern_probability_with_y(const FiniteGraph& graph,
                                      std::span<const FiniteGraph::Index> sites,
                                      std::span<const std::uint8_t> pattern, FiniteGraph::Index v,
                                      bool y_v, double p, double delta);

enum class LemmaCase : std::uint8_t {
  Disjoint,    // D_v and F do not meet
  ForcedZero,  // some u in D_v ∩ F has r_u = 1
  AllVacant,   // D_v ∩ F nonempty, all r_u = 0 there
};

std::string_view to_string(LemmaCase c);

struct LemmaRow {
  std::vector<std::uint8_t> pattern;
  LemmaCase lemma_case = LemmaCase::Disjoint;
  double joint_y1 = 0.0;     // P(Y_v = 1; pattern)
  double joint_y0 = 0.0;     // P(Y_v = 0; pattern)
  double conditional = 0.0;  // P(Y_v = 1 | pattern)
  double odds = 0.0;         // joint_y1 / joint_y0
  double bound = 0.0;        // c_epsilon * delta
  double tight_bound = 0.0;  // delta / ((1 - delta)(1 - p)^d)
  double ratio = 0.0;        // conditional / bound
  bool pass = false;
};

struct LemmaReport {
  LemmaConstant constant;
  FiniteGraph::Index v = FiniteGraph::kNone;
  std::vector<FiniteGraph::Index> F;
  std::vector<LemmaRow> rows;  // positive-probability patterns only
  std::size_t zero_probability_patterns = 0;
  double max_ratio = 0.0;
  bool all_pass = true;
};

// Checks every colouring of F exactly. Throws UsageError outside
// 0 < delta <= p_c, p_c < p < 1 - epsilon, 0 < epsilon < 1.
LemmaReport verify_lemma_bound(const FiniteGraph& graph, FiniteGraph::Index v,
                               std::span<const FiniteGraph::Index> F, double p, double delta,
                               double epsilon, double p_c);

struct DominationRow {
  std::vector<std::uint8_t> pattern;
  double conditional = 0.0;  // P(R_v = 1 | pattern)
  bool pass = false;
};

struct DominationPatchReport {
  LemmaConstant constant;
  double lower_bound = 0.0;  // p (1 - d c_epsilon delta)
  FiniteGraph::Index v = FiniteGraph::kNone;
  std::vector<FiniteGraph::Index> F;
  std::vector<DominationRow> rows;
  double min_margin = 0.0;  // min(conditional - lower_bound)
  bool all_pass = true;
};

// Exact P(R_v = 1 | pattern) >= p(1 - d c_epsilon delta) for every
// positive-probability pattern on F (v not in F).
DominationPatchReport verify_domination_patch(const FiniteGraph& graph, FiniteGraph::Index v,
                                              std::span<const FiniteGraph::Index> F, double p,
                                              double delta, double epsilon, double p_c);

struct DominationScaleReport {
  double q = 0.0;  // p (1 - d c_epsilon delta)
  Estimate red_spanning;
  Estimate iid_spanning;
  double combined_sigma = 0.0;
  bool pass = false;  // red >= iid - 3 sigma
};

// Red (neighbourhood) spanning frequency against an i.i.d. Bernoulli(q) field,
// same box and trial count. Throws UsageError when q <= p_c unless
// allow_subcritical.
DominationScaleReport verify_domination_scale(const FiniteGraph& graph, double p, double delta,
                                              double epsilon, double p_c, std::int64_t trials,
                                              std::uint64_t seed, unsigned threads = 1,
                                              bool allow_subcritical = false);

// delta with p (1 - d c_epsilon delta) = q.
double delta_for_domination_level(double p, double q, const LemmaConstant& c);

// All subsets of size 1..max_size of the sites within Chebyshev distance
// `radius` of v (v included only when include_v).
std::vector<std::vector<FiniteGraph::Index>> patch_family(const FiniteGraph& graph,
                                                          FiniteGraph::Index v, int radius,
                                                          int max_size, bool include_v);

// ---------------------------------------------------------------------------
// Blocking mechanisms on a single sample.

struct BlockingCheck {
  bool circuit_found = false;
  bool translate_in_box = true;  // tilde variant only
  std::size_t circuit_length = 0;
  std::size_t checked_sites = 0;
  std::size_t violations = 0;
};

// Looks for a red circuit around the origin inside destroyed X clusters; for
// its (1,0) translate w, requires Y_w = 0, X*_w = 0, Z_w = 0, translate
// consecutive sites matching-adjacent, and the origin cut off in Z.
BlockingCheck check_tilde_blocking(const FiniteGraph& graph, const SdpSample& sample);

// Same with the neighbourhood colouring: Z = 0 on the union of D_v over the
// circuit, and the origin cut off in Z.
BlockingCheck check_neighborhood_blocking(const FiniteGraph& graph, const SdpSample& sample);

// Number of red sites that are X-vacant, or that belong to a proxy-infinite
// red cluster whose X cluster is not proxy-infinite.
std::size_t red_containment_violations(const FiniteGraph& graph, const Config& red,
                                       const Config& x, InfinityProxy proxy);

}  // namespace sdperc
