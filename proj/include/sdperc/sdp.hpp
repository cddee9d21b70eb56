#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sdperc/catastrophe.hpp"
#include "sdperc/config.hpp"
#include "sdperc/lattice.hpp"
#include "sdperc/rng.hpp"

namespace sdperc {

struct Params {
  double p = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::int64_t trials = 1;
};

// Throws UsageError unless p, delta are in [0,1] and trials >= 1.
void validate(const Params& params);

struct SdpSample {
  Config x;
  Config xstar;
  Config y;
  Config z;  // xstar | y
};

// Bernoulli mean with stderr sqrt(v(1-v)/trials).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

Estimate bernoulli_estimate(std::int64_t successes, std::int64_t trials, std::uint64_t seed);

// Site i is occupied iff stream.uniform_at(i) < q.
Config sample_field(const FiniteGraph& graph, double q, const Stream& stream);

// X from the (seed, trial, X) stream, Y from the (seed, trial, Y) stream.
SdpSample sdp_sample(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                     std::uint64_t trial_index);

// Finite-volume surrogate of theta(p, delta): origin joined to the boundary in Z.
Estimate theta_hat(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                   unsigned threads = 1);

// Z contains a left-right spanning cluster.
Estimate spanning_hat(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                      unsigned threads = 1);

struct SimulationResult {
  Estimate theta;
  Estimate spanning;
};

// theta_hat and spanning_hat from the same samples.
SimulationResult simulate(const FiniteGraph& graph, const Params& params, InfinityProxy proxy,
                          unsigned threads = 1);

// Ordinary percolation (no destruction): left-right spanning frequency of the
// X field at p.
Estimate percolation_spanning_hat(const FiniteGraph& graph, double p, std::int64_t trials,
                                  std::uint64_t seed, unsigned threads = 1);

enum class CrossingEvent : std::uint8_t {
  Spanning,  // a left-right spanning cluster
  Theta,     // origin joined to the boundary
};

std::string_view to_string(CrossingEvent event);
CrossingEvent parse_crossing_event(std::string_view name);  // "spanning" | "theta"

bool event_holds(const FiniteGraph& graph, const Config& config, CrossingEvent event);

// For the coupled family base | {stream.uniform_at(i) < q}, the event holds
// exactly when q > threshold. Returns -1 when it already holds in `base` and
// 2 when it never holds. Sites are added in increasing order of their uniform
// into an incremental union-find.
double event_threshold(const FiniteGraph& graph, const Config& base, const Stream& stream,
                       CrossingEvent event);

// Per-trial thresholds; trial t uses the same streams as sdp_sample(..., t).
// Evaluating the empirical CDF of these at delta reproduces the direct
// estimate at delta exactly.
std::vector<double> delta_thresholds(const FiniteGraph& graph, double p, std::uint64_t seed,
                                     std::int64_t trials, InfinityProxy proxy,
                                     CrossingEvent event, unsigned threads = 1);

// Same for ordinary percolation in p (X stream, empty base).
std::vector<double> p_thresholds(const FiniteGraph& graph, std::uint64_t seed,
                                 std::int64_t trials, CrossingEvent event, unsigned threads = 1);

// Fraction of thresholds strictly below q.
double fraction_below(const std::vector<double>& sorted_thresholds, double q);

}  // namespace sdperc
