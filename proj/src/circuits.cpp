#include "sdperc/circuits.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "sdperc/error.hpp"

namespace sdperc {

using Index = FiniteGraph::Index;

namespace {

std::span<const Index> adjacent_sites(const FiniteGraph& g, Index v, Adjacency adj) {
  return adj == Adjacency::Primal ? g.neighbors(v) : g.matching_neighbors(v);
}

bool linked(const FiniteGraph& g, Index a, Index b, Adjacency adj) {
  return adj == Adjacency::Primal ? g.adjacent(a, b) : g.matching_adjacent(a, b);
}

// Whether segment a-b crosses the ray {(x, P.y) : x > P.x}, half-open in y.
// Endpoints are ordered first so the answer is symmetric in (a, b).
bool crosses_ray(Point2 a, Point2 b, Point2 p) {
  if ((a.y > p.y) == (b.y > p.y)) return false;
  if (b.y < a.y || (b.y == a.y && b.x < a.x)) std::swap(a, b);
  double x_at = a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y);
  return p.x < x_at;
}

}  // namespace

bool polygon_contains(const FiniteGraph& graph, std::span<const Index> cycle, Point2 point) {
  bool inside = false;
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) {
    Point2 a = graph.embed(cycle[i]);
    Point2 b = graph.embed(cycle[(i + 1) % k]);
    if (crosses_ray(a, b, point)) inside = !inside;
  }
  return inside;
}

bool strictly_inside(const FiniteGraph& graph, const Circuit& circuit, Index v) {
  if (std::find(circuit.vertices.begin(), circuit.vertices.end(), v) != circuit.vertices.end())
    return false;
  return polygon_contains(graph, circuit.vertices, graph.embed(v));
}

bool strictly_outside(const FiniteGraph& graph, const Circuit& circuit, Index v) {
  if (std::find(circuit.vertices.begin(), circuit.vertices.end(), v) != circuit.vertices.end())
    return false;
  return !polygon_contains(graph, circuit.vertices, graph.embed(v));
}

void validate_circuit(const FiniteGraph& graph, const Circuit& circuit) {
  const auto& cyc = circuit.vertices;
  if (cyc.size() < 3) throw UsageError("circuit needs at least 3 sites");
  std::vector<Index> sorted = cyc;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("circuit repeats a site");
  for (Index v : cyc)
    if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
      throw UsageError("circuit site out of range");
  for (std::size_t i = 0; i < cyc.size(); ++i)
    if (!linked(graph, cyc[i], cyc[(i + 1) % cyc.size()], circuit.adjacency))
      throw UsageError("circuit has non-adjacent consecutive sites");
  if (!strictly_inside(graph, circuit, graph.origin()))
    throw UsageError("circuit does not surround the origin");
}

std::optional<Circuit> find_circuit(const FiniteGraph& graph, const Config& config,
                                    Adjacency adjacency, bool occupied) {
  require_on(graph, config, "find_circuit");
  const std::size_t n = graph.vertex_count();
  const Index origin = graph.origin();
  const Point2 o = graph.embed(origin);
  auto allowed = [&](Index v) { return v != origin && config[static_cast<std::size_t>(v)] == occupied; };
  auto parity = [&](Index a, Index b) {
    return crosses_ray(graph.embed(a), graph.embed(b), o) ? 1 : 0;
  };

  // Layered BFS: node 2v+b means "at v with crossing parity b".
  std::vector<Index> parent(2 * n, FiniteGraph::kNone);
  std::vector<std::uint8_t> seen(2 * n, 0);
  std::vector<std::uint8_t> done(n, 0);
  std::deque<Index> queue;

  for (std::size_t s = 0; s < n; ++s) {
    const auto start = static_cast<Index>(s);
    if (done[s] || !allowed(start)) continue;
    queue.clear();
    std::vector<Index> touched;
    seen[2 * s] = 1;
    queue.push_back(2 * start);
    bool odd = false;
    while (!queue.empty() && !odd) {
      Index node = queue.front();
      queue.pop_front();
      Index v = node / 2;
      int b = node % 2;
      touched.push_back(v);
      for (Index u : adjacent_sites(graph, v, adjacency)) {
        if (!allowed(u)) continue;
        Index next = 2 * u + (b ^ parity(v, u));
        if (seen[static_cast<std::size_t>(next)]) continue;
        seen[static_cast<std::size_t>(next)] = 1;
        parent[static_cast<std::size_t>(next)] = node;
        if (next == 2 * start + 1) {
          odd = true;
          break;
        }
        queue.push_back(next);
      }
    }
    for (Index v : touched) done[static_cast<std::size_t>(v)] = 1;
    // Without an odd walk the whole component was drained from the queue.
    if (!odd) continue;

    // Closed walk start -> ... -> start with odd total parity.
    std::vector<Index> walk;
    for (Index node = 2 * start + 1; node != FiniteGraph::kNone;
         node = parent[static_cast<std::size_t>(node)])
      walk.push_back(node / 2);
    std::reverse(walk.begin(), walk.end());

    // Peel loops; even ones are discarded, the first odd one is simple.
    std::vector<Index> stack;
    std::vector<int> prefix;
    std::vector<int> pos(n, -1);
    stack.push_back(walk[0]);
    prefix.push_back(0);
    pos[static_cast<std::size_t>(walk[0])] = 0;
    for (std::size_t k = 1; k < walk.size(); ++k) {
      Index w = walk[k];
      int step = parity(stack.back(), w);
      int at = pos[static_cast<std::size_t>(w)];
      if (at >= 0) {
        int loop = prefix.back() ^ step ^ prefix[static_cast<std::size_t>(at)];
        if (loop == 1) {
          Circuit c{std::vector<Index>(stack.begin() + at, stack.end()), adjacency};
          validate_circuit(graph, c);
          return c;
        }
        while (static_cast<int>(stack.size()) > at + 1) {
          pos[static_cast<std::size_t>(stack.back())] = -1;
          stack.pop_back();
          prefix.pop_back();
        }
      } else {
        pos[static_cast<std::size_t>(w)] = static_cast<int>(stack.size());
        prefix.push_back(prefix.back() ^ step);
        stack.push_back(w);
      }
    }
    throw NumericalError("find_circuit: odd closed walk without an odd simple cycle");
  }
  return std::nullopt;
}

bool check_separation(const FiniteGraph& graph, const Circuit& circuit,
                      std::span<const Index> path) {
  validate_circuit(graph, circuit);
  if (path.empty()) throw UsageError("separation path is empty");
  for (Index v : path)
    if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
      throw UsageError("separation path site out of range");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!graph.adjacent(path[i], path[i + 1]))
      throw UsageError("separation path has non-adjacent consecutive sites");
  if (!strictly_inside(graph, circuit, path.front()))
    throw UsageError("separation path must start strictly inside the circuit");
  if (!strictly_outside(graph, circuit, path.back()))
    throw UsageError("separation path must end strictly outside the circuit");

  std::vector<std::uint8_t> on(graph.vertex_count(), 0);
  for (Index v : circuit.vertices) on[static_cast<std::size_t>(v)] = 1;
  for (Index v : path)
    for (Index u : graph.neighbors(v))
      if (on[static_cast<std::size_t>(u)]) return true;
  return false;
}

std::optional<std::vector<Index>> translate(const FiniteGraph& graph, std::span<const Index> sites,
                                            Vertex offset) {
  std::vector<Index> out;
  out.reserve(sites.size());
  for (Index v : sites) {
    Index u = graph.index_of(graph.vertex(v) + offset);
    if (u == FiniteGraph::kNone) return std::nullopt;
    out.push_back(u);
  }
  return out;
}

std::string circuit_to_csv(const FiniteGraph& graph, const Circuit& circuit) {
  std::ostringstream os;
  os << "step,x,y\n";
  for (std::size_t i = 0; i < circuit.vertices.size(); ++i) {
    Vertex v = graph.vertex(circuit.vertices[i]);
    os << i << ',' << v.x << ',' << v.y << '\n';
  }
  return os.str();
}

}  // namespace sdperc
