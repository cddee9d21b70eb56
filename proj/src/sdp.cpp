#include "sdperc/sdp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <utility>

#include "sdperc/error.hpp"
#include "sdperc/parallel.hpp"
#include "sdperc/union_find.hpp"

namespace sdperc {

using Index = FiniteGraph::Index;

namespace {

void require_probability(double q, const char* name) {
  if (!(q >= 0.0 && q <= 1.0))
    throw UsageError(std::string(name) + " must lie in [0,1], got " + std::to_string(q));
}

std::int64_t sum_flags(const std::vector<std::uint8_t>& hits) {
  std::int64_t s = 0;
  for (auto h : hits) s += h;
  return s;
}

}  // namespace

void validate(const Params& params) {
  require_probability(params.p, "p");
  require_probability(params.delta, "delta");
  if (params.trials < 1) throw UsageError("trials must be >= 1");
}

Estimate bernoulli_estimate(std::int64_t successes, std::int64_t trials, std::uint64_t seed) {
  Estimate e;
  e.trials = trials;
  e.seed = seed;
  if (trials <= 0) return e;
  e.value = static_cast<double>(successes) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
  return e;
}

Config sample_field(const FiniteGraph& graph, double q, const Stream& stream) {
  require_probability(q, "occupation probability");
  Config c(graph);
  auto bits = c.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = stream.uniform_at(i) < q ? 1 : 0;
  return c;
}

SdpSample sdp_sample(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                     std::uint64_t trial_index) {
  validate(params);
  SdpSample s;
  s.x = sample_field(graph, params.p, Stream(params.seed, trial_index, FieldTag::X));
  s.xstar = destroy(graph, s.x, proxy);
  s.y = sample_field(graph, params.delta, Stream(params.seed, trial_index, FieldTag::Y));
  s.z = s.xstar | s.y;
  assert(pointwise_leq(s.xstar, s.x));
  return s;
}

SimulationResult simulate(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                          unsigned threads) {
  validate(params);
  const auto n = params.trials;
  std::vector<std::uint8_t> theta(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> span(static_cast<std::size_t>(n), 0);
  parallel_for(n, threads, [&](std::int64_t t) {
    SdpSample s = sdp_sample(graph, params, proxy, static_cast<std::uint64_t>(t));
    theta[static_cast<std::size_t>(t)] = origin_reaches_boundary(graph, s.z) ? 1 : 0;
    span[static_cast<std::size_t>(t)] = spans_left_right(graph, s.z) ? 1 : 0;
  });
  return {bernoulli_estimate(sum_flags(theta), n, params.seed),
          bernoulli_estimate(sum_flags(span), n, params.seed)};
}

Estimate theta_hat(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                   unsigned threads) {
  validate(params);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(params.trials), 0);
  parallel_for(params.trials, threads, [&](std::int64_t t) {
    SdpSample s = sdp_sample(graph, params, proxy, static_cast<std::uint64_t>(t));
    hit[static_cast<std::size_t>(t)] = origin_reaches_boundary(graph, s.z) ? 1 : 0;
  });
  return bernoulli_estimate(sum_flags(hit), params.trials, params.seed);
}

Estimate spanning_hat(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                      unsigned threads) {
  validate(params);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(params.trials), 0);
  parallel_for(params.trials, threads, [&](std::int64_t t) {
    SdpSample s = sdp_sample(graph, params, proxy, static_cast<std::uint64_t>(t));
    hit[static_cast<std::size_t>(t)] = spans_left_right(graph, s.z) ? 1 : 0;
  });
  return bernoulli_estimate(sum_flags(hit), params.trials, params.seed);
}

Estimate percolation_spanning_hat(const FiniteGraph& graph, double p, std::int64_t trials,
                                  std::uint64_t seed, unsigned threads) {
  require_probability(p, "p");
  if (trials < 1) throw UsageError("trials must be >= 1");
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, threads, [&](std::int64_t t) {
    Config x = sample_field(graph, p, Stream(seed, static_cast<std::uint64_t>(t), FieldTag::X));
    hit[static_cast<std::size_t>(t)] = spans_left_right(graph, x) ? 1 : 0;
  });
  return bernoulli_estimate(sum_flags(hit), trials, seed);
}

std::string_view to_string(CrossingEvent event) {
  return event == CrossingEvent::Spanning ? "spanning" : "theta";
}

CrossingEvent parse_crossing_event(std::string_view name) {
  if (name == "spanning") return CrossingEvent::Spanning;
  if (name == "theta") return CrossingEvent::Theta;
  throw UsageError("unknown event '" + std::string(name) + "' (spanning|theta)");
}

bool event_holds(const FiniteGraph& graph, const Config& config, CrossingEvent event) {
  return event == CrossingEvent::Spanning ? spans_left_right(graph, config)
                                          : origin_reaches_boundary(graph, config);
}

double event_threshold(const FiniteGraph& graph, const Config& base, const Stream& stream,
                       CrossingEvent event) {
  require_on(graph, base, "event_threshold");
  const std::size_t n = graph.vertex_count();
  std::vector<std::uint8_t> occ(n, 0);
  auto base_bits = base.bits();
  std::vector<std::uint8_t> flags(n, 0);
  UnionFind uf(n);
  const Index origin = graph.origin();

  auto add = [&](Index i) -> std::uint8_t {
    occ[static_cast<std::size_t>(i)] = 1;
    flags[static_cast<std::size_t>(i)] = graph.boundary_flags(i);
    Index r = uf.find(i);
    for (Index j : graph.neighbors(i)) {
      if (!occ[static_cast<std::size_t>(j)]) continue;
      Index rj = uf.find(j);
      if (rj == r) continue;
      std::uint8_t merged = flags[static_cast<std::size_t>(r)] | flags[static_cast<std::size_t>(rj)];
      r = uf.unite(r, rj);
      flags[static_cast<std::size_t>(r)] = merged;
    }
    return flags[static_cast<std::size_t>(r)];
  };
  auto holds = [&](std::uint8_t touched) {
    if (event == CrossingEvent::Spanning)
      return (touched & side_bits::kLeft) && (touched & side_bits::kRight);
    if (!occ[static_cast<std::size_t>(origin)]) return false;
    return flags[static_cast<std::size_t>(uf.find(origin))] != 0;
  };

  bool already = false;
  std::vector<std::pair<std::uint64_t, Index>> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (base_bits[i]) {
      if (holds(add(static_cast<Index>(i)))) already = true;
    } else {
      order.emplace_back(stream.at(i) >> 11, static_cast<Index>(i));
    }
  }
  if (already || (event == CrossingEvent::Theta && holds(0))) return -1.0;

  std::sort(order.begin(), order.end());
  for (std::size_t k = 0; k < order.size();) {
    // Sites with equal uniforms switch on together.
    const std::uint64_t key = order[k].first;
    bool hit = false;
    for (; k < order.size() && order[k].first == key; ++k)
      if (holds(add(order[k].second))) hit = true;
    if (hit) return static_cast<double>(key) * 0x1.0p-53;
  }
  return 2.0;
}

std::vector<double> delta_thresholds(const FiniteGraph& graph, double p, std::uint64_t seed,
                                     std::int64_t trials, InfinityProxy proxy,
                                     CrossingEvent event, unsigned threads) {
  require_probability(p, "p");
  if (trials < 1) throw UsageError("trials must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(trials), 0.0);
  parallel_for(trials, threads, [&](std::int64_t t) {
    auto tt = static_cast<std::uint64_t>(t);
    Config x = sample_field(graph, p, Stream(seed, tt, FieldTag::X));
    Config xstar = destroy(graph, x, proxy);
    out[static_cast<std::size_t>(t)] =
        event_threshold(graph, xstar, Stream(seed, tt, FieldTag::Y), event);
  });
  return out;
}

std::vector<double> p_thresholds(const FiniteGraph& graph, std::uint64_t seed,
                                 std::int64_t trials, CrossingEvent event, unsigned threads) {
  if (trials < 1) throw UsageError("trials must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(trials), 0.0);
  const Config empty(graph);
  parallel_for(trials, threads, [&](std::int64_t t) {
    out[static_cast<std::size_t>(t)] = event_threshold(
        graph, empty, Stream(seed, static_cast<std::uint64_t>(t), FieldTag::X), event);
  });
  return out;
}

double fraction_below(const std::vector<double>& sorted_thresholds, double q) {
  if (sorted_thresholds.empty()) return 0.0;
  auto it = std::lower_bound(sorted_thresholds.begin(), sorted_thresholds.end(), q);
  return static_cast<double>(it - sorted_thresholds.begin()) /
         static_cast<double>(sorted_thresholds.size());
}

}  // namespace sdperc
