#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdperc/config.hpp"
#include "sdperc/lattice.hpp"

namespace sdperc {

enum class Adjacency : std::uint8_t { Primal, Matching };

// A closed cycle of distinct sites, consecutive (cyclically) adjacent in the
// declared adjacency, whose polygon contains the origin by the even-odd rule.
struct Circuit {
  std::vector<FiniteGraph::Index> vertices;
  Adjacency adjacency = Adjacency::Primal;
};

// Even-odd point-in-polygon for the polygon through embed(cycle[i]).
bool polygon_contains(const FiniteGraph& graph, std::span<const FiniteGraph::Index> cycle,
                      Point2 point);

// Site `v` is off the circuit and inside it.
bool strictly_inside(const FiniteGraph& graph, const Circuit& circuit, FiniteGraph::Index v);
// Site `v` is off the circuit and outside it.
bool strictly_outside(const FiniteGraph& graph, const Circuit& circuit, FiniteGraph::Index v);

// Throws UsageError unless the circuit satisfies its invariants.
void validate_circuit(const FiniteGraph& graph, const Circuit& circuit);

// A circuit around the origin made of sites whose value equals `occupied`
// (the origin itself is never a member). The decision is exact: sites in the
// requested state are searched on a parity double cover, where the parity of
// an edge is whether it crosses the ray from the origin towards +x. An odd
// closed walk exists iff some component links both layers; loops are then
// peeled off the walk until an odd simple cycle remains.
std::optional<Circuit> find_circuit(const FiniteGraph& graph, const Config& config,
                                    Adjacency adjacency, bool occupied);

// Observation check: with `path` leaving the inside of `circuit` for its
// outside, some path site has a (primal) neighbour on the circuit. Throws
// UsageError when the path does not start strictly inside, end strictly
// outside, or is not a path of the graph.
bool check_separation(const FiniteGraph& graph, const Circuit& circuit,
                      std::span<const FiniteGraph::Index> path);

// Translate every site by `offset`; nullopt when any image leaves the box.
std::optional<std::vector<FiniteGraph::Index>> translate(
    const FiniteGraph& graph, std::span<const FiniteGraph::Index> sites, Vertex offset);

// "step,x,y" rows with a header line.
std::string circuit_to_csv(const FiniteGraph& graph, const Circuit& circuit);

}  // namespace sdperc
