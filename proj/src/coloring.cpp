#include "sdperc/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "sdperc/error.hpp"
#include "sdperc/parallel.hpp"

namespace sdperc {

using Index = FiniteGraph::Index;

namespace {

constexpr int kMaxPatternZeros = 20;
constexpr int kMaxPatchSites = 16;

void check_sites(const FiniteGraph& graph, std::span<const Index> sites) {
  std::vector<Index> sorted(sites.begin(), sites.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("patch sites must be distinct");
  for (Index v : sites)
    if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
      throw UsageError("patch site out of range");
}

// Alternating sum shared by both pattern probabilities. `y_mode`: -1 ignores
// Y_v, 0/1 fixes it.
double pattern_mass(const FiniteGraph& graph, std::span<const Index> sites,
                    std::span<const std::uint8_t> pattern, Index v, int y_mode, double p,
                    double delta) {
  if (sites.size() != pattern.size()) throw UsageError("pattern length differs from site count");
  check_sites(graph, sites);
  std::vector<Index> ones;
  std::vector<Index> zeros;
  for (std::size_t i = 0; i < sites.size(); ++i) (pattern[i] ? ones : zeros).push_back(sites[i]);
  if (zeros.size() > static_cast<std::size_t>(kMaxPatternZeros))
    throw NumericalError("pattern has too many zeros to expand exactly");

  const long double q = 1.0L - static_cast<long double>(delta);
  std::vector<std::uint32_t> stamp(graph.vertex_count(), 0);
  std::uint32_t current = 0;
  long double total = 0.0L;
  const std::uint64_t subsets = std::uint64_t{1} << zeros.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    ++current;
    std::size_t covered = 0;
    bool v_covered = false;
    auto cover = [&](Index u) {
      for (Index w : graph.neighbors(u)) {
        auto wi = static_cast<std::size_t>(w);
        if (stamp[wi] == current) continue;
        stamp[wi] = current;
        ++covered;
        if (w == v) v_covered = true;
      }
    };
    for (Index u : ones) cover(u);
    int picked = 0;
    for (std::size_t k = 0; k < zeros.size(); ++k) {
      if (mask & (std::uint64_t{1} << k)) {
        cover(zeros[k]);
        ++picked;
      }
    }
    long double y_part;
    if (y_mode < 0) {
      y_part = std::pow(q, static_cast<long double>(covered));
    } else if (y_mode == 1) {
      y_part = v_covered ? 0.0L
                         : static_cast<long double>(delta) * std::pow(q, static_cast<long double>(covered));
    } else {
      y_part = std::pow(q, static_cast<long double>(covered + (v_covered ? 0 : 1)));
    }
    long double coeff = std::pow(static_cast<long double>(p), static_cast<long double>(picked));
    total += (picked % 2 ? -coeff : coeff) * y_part;
  }
  total *= std::pow(static_cast<long double>(p), static_cast<long double>(ones.size()));
  return static_cast<double>(total);
}

void check_lemma_hypotheses(double p, double delta, double epsilon, double p_c,
                            bool allow_zero_delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw UsageError("epsilon must lie in (0,1)");
  if (!(p_c > 0.0 && p_c < 1.0)) throw UsageError("p_c must lie in (0,1)");
  bool delta_ok = allow_zero_delta ? (delta >= 0.0 && delta <= p_c) : (delta > 0.0 && delta <= p_c);
  if (!delta_ok)
    throw UsageError("delta = " + std::to_string(delta) + " outside the lemma's range " +
                     (allow_zero_delta ? "[0, p_c]" : "(0, p_c]"));
  if (!(p > p_c && p < 1.0 - epsilon))
    throw UsageError("p = " + std::to_string(p) + " outside (p_c, 1 - epsilon) = (" +
                     std::to_string(p_c) + ", " + std::to_string(1.0 - epsilon) + ")");
}

std::vector<std::uint8_t> pattern_bits(std::uint64_t code, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = (code >> i) & 1U;
  return bits;
}

}  // namespace

bool has_tilde_map(LatticeKind kind) { return kind != LatticeKind::TriangularBondCovering; }

RedConfig red_tilde(const FiniteGraph& graph, const Config& x, const Config& y) {
  if (!has_tilde_map(graph.kind()))
    throw UsageError("lattice " + std::string(to_string(graph.kind())) + " has no tilde map");
  require_on(graph, x, "red_tilde");
  require_on(graph, y, "red_tilde");
  RedConfig out{Config(graph), RedVariant::Tilde};
  auto bits = out.bits.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    Index t = graph.tilde_index(static_cast<Index>(i));
    bits[i] = (t != FiniteGraph::kNone && x[i] && !y[static_cast<std::size_t>(t)]) ? 1 : 0;
  }
  return out;
}

RedConfig red_neighborhood(const FiniteGraph& graph, const Config& x, const Config& y) {
  require_on(graph, x, "red_neighborhood");
  require_on(graph, y, "red_neighborhood");
  RedConfig out{Config(graph), RedVariant::Neighborhood};
  auto bits = out.bits.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (!x[i]) continue;
    bool clear = true;
    for (Index u : graph.neighbors(static_cast<Index>(i))) {
      if (y[static_cast<std::size_t>(u)]) {
        clear = false;
        break;
      }
    }
    bits[i] = clear ? 1 : 0;
  }
  return out;
}

LemmaConstant lemma_constant(double epsilon, double p_c, int d) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw UsageError("epsilon must lie in (0,1]");
  if (!(p_c > 0.0 && p_c < 1.0)) throw UsageError("p_c must lie in (0,1)");
  if (d < 1) throw UsageError("degree must be >= 1");
  return {epsilon, p_c, d, 1.0 / ((1.0 - p_c) * std::pow(epsilon, d))};
}

double red_pattern_probability(const FiniteGraph& graph, std::span<const Index> sites,
                               std::span<const std::uint8_t> pattern, double p, double delta) {
  return pattern_mass(graph, sites, pattern, FiniteGraph::kNone, -1, p, delta);
}

double red_pattern_probability_with_y(const FiniteGraph& graph, std::span<const Index> sites,
                                      std::span<const std::uint8_t> pattern, Index v, bool y_v,
                                      double p, double delta) {
  if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
    throw UsageError("site v out of range");
  return pattern_mass(graph, sites, pattern, v, y_v ? 1 : 0, p, delta);
}

std::string_view to_string(LemmaCase c) {
  switch (c) {
    case LemmaCase::Disjoint: return "disjoint";
    case LemmaCase::ForcedZero: return "forced-zero";
    case LemmaCase::AllVacant: return "all-vacant";
  }
  return "?";
}

LemmaReport verify_lemma_bound(const FiniteGraph& graph, Index v, std::span<const Index> F,
                               double p, double delta, double epsilon, double p_c) {
  check_lemma_hypotheses(p, delta, epsilon, p_c, false);
  if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
    throw UsageError("site v out of range");
  if (F.size() > static_cast<std::size_t>(kMaxPatchSites))
    throw NumericalError("patch too large to enumerate (|F| = " + std::to_string(F.size()) + ")");
  check_sites(graph, F);

  LemmaReport report;
  report.constant = lemma_constant(epsilon, p_c, graph.degree());
  report.v = v;
  report.F.assign(F.begin(), F.end());

  const double bound = report.constant.c_epsilon * delta;
  const double tight = delta / ((1.0 - delta) * std::pow(1.0 - p, graph.degree()));
  const std::uint64_t patterns = std::uint64_t{1} << F.size();
  for (std::uint64_t code = 0; code < patterns; ++code) {
    LemmaRow row;
    row.pattern = pattern_bits(code, F.size());
    bool meets = false;
    bool forced = false;
    for (std::size_t i = 0; i < F.size(); ++i) {
      if (graph.adjacent(v, F[i])) {
        meets = true;
        if (row.pattern[i]) forced = true;
      }
    }
    row.lemma_case = !meets ? LemmaCase::Disjoint : forced ? LemmaCase::ForcedZero : LemmaCase::AllVacant;
    row.joint_y1 = red_pattern_probability_with_y(graph, F, row.pattern, v, true, p, delta);
    row.joint_y0 = red_pattern_probability_with_y(graph, F, row.pattern, v, false, p, delta);
    if (row.joint_y1 + row.joint_y0 <= 0.0) {
      ++report.zero_probability_patterns;
      continue;
    }
    row.conditional = row.joint_y1 / (row.joint_y1 + row.joint_y0);
    row.odds = row.joint_y0 > 0.0 ? row.joint_y1 / row.joint_y0
                                  : std::numeric_limits<double>::infinity();
    row.bound = bound;
    row.tight_bound = tight;
    row.ratio = row.conditional / bound;
    row.pass = row.conditional <= bound && row.odds <= bound &&
               row.odds <= tight * (1.0 + 1e-12) &&
               (row.lemma_case != LemmaCase::ForcedZero || row.joint_y1 == 0.0);
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

DominationPatchReport verify_domination_patch(const FiniteGraph& graph, Index v,
                                              std::span<const Index> F, double p, double delta,
                                              double epsilon, double p_c) {
  check_lemma_hypotheses(p, delta, epsilon, p_c, true);
  if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
    throw UsageError("site v out of range");
  if (std::find(F.begin(), F.end(), v) != F.end()) throw UsageError("F must not contain v");
  if (F.size() > static_cast<std::size_t>(kMaxPatchSites))
    throw NumericalError("patch too large to enumerate (|F| = " + std::to_string(F.size()) + ")");
  check_sites(graph, F);

  DominationPatchReport report;
  report.constant = lemma_constant(epsilon, p_c, graph.degree());
  report.lower_bound = p * (1.0 - graph.degree() * report.constant.c_epsilon * delta);
  report.v = v;
  report.F.assign(F.begin(), F.end());
  report.min_margin = std::numeric_limits<double>::infinity();

  std::vector<Index> with_v(F.begin(), F.end());
  with_v.push_back(v);
  const std::uint64_t patterns = std::uint64_t{1} << F.size();
  for (std::uint64_t code = 0; code < patterns; ++code) {
    DominationRow row;
    row.pattern = pattern_bits(code, F.size());
    double den = red_pattern_probability(graph, F, row.pattern, p, delta);
    if (den <= 0.0) continue;
    std::vector<std::uint8_t> extended = row.pattern;
    extended.push_back(1);
    double num = red_pattern_probability(graph, with_v, extended, p, delta);
    row.conditional = num / den;
    // Alternating sums carry rounding of order 1e-16 relative.
    row.pass = row.conditional >= report.lower_bound - 1e-13;
    report.min_margin = std::min(report.min_margin, row.conditional - report.lower_bound);
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  return report;
}

double delta_for_domination_level(double p, double q, const LemmaConstant& c) {
  return (1.0 - q / p) / (c.d * c.c_epsilon);
}

DominationScaleReport verify_domination_scale(const FiniteGraph& graph, double p, double delta,
                                              double epsilon, double p_c, std::int64_t trials,
                                              std::uint64_t seed, unsigned threads,
                                              bool allow_subcritical) {
  if (trials < 1) throw UsageError("trials must be >= 1");
  LemmaConstant c = lemma_constant(epsilon, p_c, graph.degree());
  DominationScaleReport report;
  report.q = p * (1.0 - c.d * c.c_epsilon * delta);
  if (report.q <= p_c && !allow_subcritical)
    throw UsageError("p(1 - d c_eps delta) = " + std::to_string(report.q) +
                     " is not above p_c = " + std::to_string(p_c));
  const double q = std::clamp(report.q, 0.0, 1.0);
  std::vector<std::uint8_t> red_hit(static_cast<std::size_t>(trials), 0);
  std::vector<std::uint8_t> iid_hit(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, threads, [&](std::int64_t t) {
    auto tt = static_cast<std::uint64_t>(t);
    Config x = sample_field(graph, p, Stream(seed, tt, FieldTag::X));
    Config y = sample_field(graph, delta, Stream(seed, tt, FieldTag::Y));
    red_hit[static_cast<std::size_t>(t)] =
        spans_left_right(graph, red_neighborhood(graph, x, y).bits) ? 1 : 0;
    Config ref = sample_field(graph, q, Stream(seed, tt, FieldTag::Reference));
    iid_hit[static_cast<std::size_t>(t)] = spans_left_right(graph, ref) ? 1 : 0;
  });
  std::int64_t red = 0;
  std::int64_t iid = 0;
  for (std::size_t i = 0; i < red_hit.size(); ++i) {
    red += red_hit[i];
    iid += iid_hit[i];
  }
  report.red_spanning = bernoulli_estimate(red, trials, seed);
  report.iid_spanning = bernoulli_estimate(iid, trials, seed);
  report.combined_sigma = std::hypot(report.red_spanning.std_error, report.iid_spanning.std_error);
  report.pass = report.red_spanning.value >= report.iid_spanning.value - 3.0 * report.combined_sigma;
  return report;
}

std::vector<std::vector<Index>> patch_family(const FiniteGraph& graph, Index v, int radius,
                                             int max_size, bool include_v) {
  if (radius < 0 || max_size < 1) throw UsageError("patch family needs radius >= 0, size >= 1");
  std::vector<Index> candidates;
  Vertex c = graph.vertex(v);
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    Vertex u = graph.vertex(static_cast<Index>(i));
    if (std::max(std::abs(u.x - c.x), std::abs(u.y - c.y)) > radius) continue;
    if (static_cast<Index>(i) == v && !include_v) continue;
    candidates.push_back(static_cast<Index>(i));
  }
  std::vector<std::vector<Index>> out;
  std::vector<Index> current;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    for (std::size_t k = from; k < candidates.size(); ++k) {
      current.push_back(candidates[k]);
      out.push_back(current);
      if (current.size() < static_cast<std::size_t>(max_size)) grow(k + 1);
      current.pop_back();
    }
  };
  grow(0);
  return out;
}

BlockingCheck check_tilde_blocking(const FiniteGraph& graph, const SdpSample& s) {
  BlockingCheck out;
  Config red = red_tilde(graph, s.x, s.y).bits;
  Config destroyed = s.x & ~s.xstar;
  auto circuit = find_circuit(graph, red & destroyed, Adjacency::Primal, true);
  if (!circuit) return out;
  out.circuit_found = true;
  out.circuit_length = circuit->vertices.size();
  auto moved = translate(graph, circuit->vertices, {1, 0});
  if (!moved) {
    out.translate_in_box = false;
    return out;
  }
  const auto& w = *moved;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!graph.matching_adjacent(w[i], w[(i + 1) % w.size()])) ++out.violations;
  Index o = graph.origin();
  bool contains = std::find(w.begin(), w.end(), o) != w.end();
  if (!contains && !polygon_contains(graph, w, graph.embed(o))) ++out.violations;
  for (Index site : w) {
    auto i = static_cast<std::size_t>(site);
    ++out.checked_sites;
    if (s.y[i] || s.xstar[i] || s.z[i]) ++out.violations;
  }
  if (origin_reaches_boundary(graph, s.z)) ++out.violations;
  return out;
}

BlockingCheck check_neighborhood_blocking(const FiniteGraph& graph, const SdpSample& s) {
  BlockingCheck out;
  Config red = red_neighborhood(graph, s.x, s.y).bits;
  Config destroyed = s.x & ~s.xstar;
  auto circuit = find_circuit(graph, red & destroyed, Adjacency::Primal, true);
  if (!circuit) return out;
  out.circuit_found = true;
  out.circuit_length = circuit->vertices.size();
  for (Index w : neighborhood_union(graph, circuit->vertices)) {
    ++out.checked_sites;
    if (s.z[static_cast<std::size_t>(w)]) ++out.violations;
  }
  if (origin_reaches_boundary(graph, s.z)) ++out.violations;
  return out;
}

std::size_t red_containment_violations(const FiniteGraph& graph, const Config& red,
                                       const Config& x, InfinityProxy proxy) {
  std::size_t bad = 0;
  ClusterLabels red_labels = label_clusters(graph, red);
  ClusterLabels x_labels = label_clusters(graph, x);
  for (std::size_t i = 0; i < red.size(); ++i) {
    if (!red[i]) continue;
    if (!x[i]) {
      ++bad;
      continue;
    }
    auto idx = static_cast<Index>(i);
    if (is_infinite(red_labels.flags_of(idx), proxy) && !is_infinite(x_labels.flags_of(idx), proxy))
      ++bad;
  }
  return bad;
}

}  // namespace sdperc
