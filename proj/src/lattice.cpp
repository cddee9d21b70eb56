#include "sdperc/lattice.hpp"

#include <algorithm>
#include <functional>

#include "sdperc/error.hpp"

namespace sdperc {

namespace {

bool even(int v) { return (v & 1) == 0; }

struct KindName {
  LatticeKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 7> kNames = {{
    {LatticeKind::SquareSite, "square-site"},
    {LatticeKind::ChessBoard, "square-bond"},
    {LatticeKind::TriangularSite, "triangular-site"},
    {LatticeKind::TriangularBondCovering, "triangular-bond"},
    {LatticeKind::StarSquareSite, "star-square-site"},
    {LatticeKind::StarHoneycombSite, "star-honeycomb-site"},
    {LatticeKind::HoneycombSite, "honeycomb-site"},
}};

bool is_covering_site(Vertex v) { return !(even(v.x) && even(v.y)); }

// Endpoints (doubled coordinates) of the triangular-lattice edge whose
// midpoint is m.
std::array<Vertex, 2> covering_endpoints(Vertex m) {
  if (!even(m.x) && even(m.y)) return {{{m.x - 1, m.y}, {m.x + 1, m.y}}};
  if (even(m.x) && !even(m.y)) return {{{m.x, m.y - 1}, {m.x, m.y + 1}}};
  return {{{m.x - 1, m.y + 1}, {m.x + 1, m.y - 1}}};
}

constexpr std::array<Vertex, 6> kTriangularSteps = {
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}};

std::vector<Vertex> chessboard_offsets(Vertex v, bool translated) {
  // Translating the chess-board by (1,0) flips the parity that selects the
  // diagonal.
  bool use_11 = even(v.x + v.y) != translated;
  std::vector<Vertex> out = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  if (use_11) {
    out.push_back({1, 1});
    out.push_back({-1, -1});
  } else {
    out.push_back({1, -1});
    out.push_back({-1, 1});
  }
  return out;
}

std::vector<Vertex> star_honeycomb_offsets(Vertex v) {
  std::vector<Vertex> out;
  for (int b = v.y - 1; b <= v.y; ++b) {
    for (int a = v.x - 2; a <= v.x; ++a) {
      if (!even(a + b)) continue;
      for (int dy = 0; dy <= 1; ++dy) {
        for (int dx = 0; dx <= 2; ++dx) {
          Vertex u{a + dx, b + dy};
          if (u == v) continue;
          Vertex off = u - v;
          if (std::find(out.begin(), out.end(), off) == out.end()) out.push_back(off);
        }
      }
    }
  }
  return out;
}

std::vector<Vertex> covering_offsets(Vertex m) {
  std::vector<Vertex> out;
  if (!is_covering_site(m)) return out;
  for (Vertex w : covering_endpoints(m)) {
    for (Vertex s : kTriangularSteps) {
      Vertex u = w + s;
      if (u == m) continue;
      Vertex off = u - m;
      if (std::find(out.begin(), out.end(), off) == out.end()) out.push_back(off);
    }
  }
  return out;
}

using Index = FiniteGraph::Index;

void build_csr(const std::vector<Vertex>& coords, int side,
               const std::vector<Index>& lookup,
               const std::function<std::vector<Vertex>(Vertex)>& offsets,
               std::vector<Index>& offs, std::vector<Index>& adj) {
  offs.assign(coords.size() + 1, 0);
  adj.clear();
  std::vector<Index> scratch;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    scratch.clear();
    Vertex v = coords[i];
    for (Vertex o : offsets(v)) {
      Vertex u = v + o;
      if (u.x < 0 || u.y < 0 || u.x >= side || u.y >= side) continue;
      Index j = lookup[static_cast<std::size_t>(u.y) * static_cast<std::size_t>(side) +
                       static_cast<std::size_t>(u.x)];
      if (j == FiniteGraph::kNone || j == static_cast<Index>(i)) continue;
      scratch.push_back(j);
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    adj.insert(adj.end(), scratch.begin(), scratch.end());
    offs[i + 1] = static_cast<Index>(adj.size());
  }
}

}  // namespace

std::string_view to_string(LatticeKind kind) {
  for (const auto& kn : kNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

LatticeKind parse_lattice_kind(std::string_view name) {
  for (const auto& kn : kNames)
    if (kn.name == name) return kn.kind;
  throw UsageError("unknown lattice kind '" + std::string(name) + "'");
}

LatticeKind matching_of(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::SquareSite: return LatticeKind::StarSquareSite;
    case LatticeKind::StarSquareSite: return LatticeKind::SquareSite;
    case LatticeKind::TriangularSite: return LatticeKind::TriangularSite;
    case LatticeKind::HoneycombSite: return LatticeKind::StarHoneycombSite;
    case LatticeKind::StarHoneycombSite: return LatticeKind::HoneycombSite;
    case LatticeKind::ChessBoard: return LatticeKind::ChessBoard;
    case LatticeKind::TriangularBondCovering:
      break;
  }
  throw UsageError("matching lattice of " + std::string(to_string(kind)) +
                   " is not implemented");
}

std::vector<Vertex> lattice_offsets(LatticeKind kind, Vertex v) {
  switch (kind) {
    case LatticeKind::SquareSite:
      return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    case LatticeKind::StarSquareSite:
      return {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
    case LatticeKind::TriangularSite:
      return {kTriangularSteps.begin(), kTriangularSteps.end()};
    case LatticeKind::ChessBoard:
      return chessboard_offsets(v, false);
    case LatticeKind::HoneycombSite:
      if (even(v.x + v.y)) return {{1, 0}, {-1, 0}, {0, 1}};
      return {{1, 0}, {-1, 0}, {0, -1}};
    case LatticeKind::StarHoneycombSite:
      return star_honeycomb_offsets(v);
    case LatticeKind::TriangularBondCovering:
      return covering_offsets(v);
  }
  throw UsageError("unknown lattice kind");
}

FiniteGraph build_box(LatticeKind kind, int side) {
  if (side < 1) throw UsageError("box side must be >= 1");
  if (kind == LatticeKind::TriangularBondCovering && side < 2)
    throw UsageError("triangular-bond box side must be >= 2");

  FiniteGraph g;
  g.kind_ = kind;
  g.side_ = side;
  const auto n2 = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
  g.lookup_.assign(n2, FiniteGraph::kNone);
  const bool covering = kind == LatticeKind::TriangularBondCovering;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      if (covering && !is_covering_site({x, y})) continue;
      g.lookup_[static_cast<std::size_t>(y) * static_cast<std::size_t>(side) +
                static_cast<std::size_t>(x)] = static_cast<Index>(g.coords_.size());
      g.coords_.push_back({x, y});
    }
  }

  build_csr(g.coords_, side, g.lookup_,
            [kind](Vertex v) { return lattice_offsets(kind, v); }, g.adj_offsets_, g.adj_);

  if (kind == LatticeKind::ChessBoard) {
    build_csr(g.coords_, side, g.lookup_,
              [](Vertex v) { return chessboard_offsets(v, true); }, g.match_offsets_,
              g.match_);
  } else if (!covering) {
    LatticeKind m = matching_of(kind);
    build_csr(g.coords_, side, g.lookup_,
              [m](Vertex v) { return lattice_offsets(m, v); }, g.match_offsets_, g.match_);
  }

  for (std::size_t i = 0; i < g.coords_.size(); ++i) {
    auto deg = g.adj_offsets_[i + 1] - g.adj_offsets_[i];
    g.degree_ = std::max(g.degree_, static_cast<int>(deg));
  }

  // A site lies on a side when one of its lattice neighbours is beyond it.
  // For the square-type lattices this is the outer row or column; brick-wall
  // rows alternate, and the covering lattice's sides are up to two deep.
  g.boundary_flags_.assign(g.coords_.size(), 0);
  for (std::size_t i = 0; i < g.coords_.size(); ++i) {
    Vertex v = g.coords_[i];
    std::uint8_t f = 0;
    for (Vertex off : lattice_offsets(kind, v)) {
      Vertex u = v + off;
      if (u.x < 0) f |= side_bits::kLeft;
      if (u.x >= side) f |= side_bits::kRight;
      if (u.y < 0) f |= side_bits::kBottom;
      if (u.y >= side) f |= side_bits::kTop;
    }
    g.boundary_flags_[i] = f;
    for (int s = 0; s < 4; ++s)
      if (f & (1u << s)) g.boundary_[static_cast<std::size_t>(s)].push_back(static_cast<Index>(i));
    if (f) g.boundary_all_.push_back(static_cast<Index>(i));
  }

  Vertex c{side / 2, side / 2};
  g.origin_ = g.index_of(c);
  if (g.origin_ == FiniteGraph::kNone) g.origin_ = g.index_of({c.x - 1, c.y});
  return g;
}

FiniteGraph::Index FiniteGraph::index_of(Vertex v) const {
  if (v.x < 0 || v.y < 0 || v.x >= side_ || v.y >= side_) return kNone;
  return lookup_[static_cast<std::size_t>(v.y) * static_cast<std::size_t>(side_) +
                 static_cast<std::size_t>(v.x)];
}

FiniteGraph::Index FiniteGraph::at(Vertex v) const {
  Index i = index_of(v);
  if (i == kNone)
    throw UsageError("(" + std::to_string(v.x) + "," + std::to_string(v.y) +
                     ") is not a site of the box");
  return i;
}

bool FiniteGraph::adjacent(Index a, Index b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::span<const FiniteGraph::Index> FiniteGraph::matching_neighbors(Index i) const {
  if (!has_matching())
    throw UsageError("lattice " + std::string(to_string(kind_)) +
                     " has no matching adjacency");
  auto b = static_cast<std::size_t>(match_offsets_[static_cast<std::size_t>(i)]);
  auto e = static_cast<std::size_t>(match_offsets_[static_cast<std::size_t>(i) + 1]);
  return {match_.data() + b, e - b};
}

bool FiniteGraph::matching_adjacent(Index a, Index b) const {
  auto nb = matching_neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

Point2 FiniteGraph::embed(Index i) const {
  Vertex v = vertex(i);
  Point2 p{static_cast<double>(v.x), static_cast<double>(v.y)};
  // Lift the brick wall into convex hexagons so face diagonals never pass
  // through another site.
  if (kind_ == LatticeKind::HoneycombSite || kind_ == LatticeKind::StarHoneycombSite)
    p.y += even(v.x + v.y) ? 0.25 : -0.25;
  return p;
}

std::vector<FiniteGraph::Index> neighborhood_union(const FiniteGraph& graph,
                                                   std::span<const FiniteGraph::Index> vertices) {
  std::vector<std::uint8_t> mark(graph.vertex_count(), 0);
  std::vector<Index> out;
  for (Index v : vertices) {
    if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
      throw UsageError("vertex index out of range");
    for (Index u : graph.neighbors(v)) {
      if (!mark[static_cast<std::size_t>(u)]) {
        mark[static_cast<std::size_t>(u)] = 1;
        out.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sdperc
