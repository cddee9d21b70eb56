#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sdperc {

// Every lattice lives on integer coordinates in Z^2:
//
//   SquareSite              nearest neighbours (+-1,0), (0,+-1)
//   ChessBoard              covering graph of the square lattice (bond model):
//                           nearest neighbours, plus v~v+(1,1) when x+y is even
//                           and v~v+(1,-1) when x+y is odd
//   TriangularSite          axial coordinates: (+-1,0), (0,+-1), (1,-1), (-1,1)
//   TriangularBondCovering  covering graph of the triangular lattice. Sites are
//                           edge midpoints in doubled coordinates, i.e. every
//                           point of Z^2 except (even, even); two sites are
//                           adjacent when their edges share an endpoint.
//   StarSquareSite          square lattice plus both diagonals of every face
//   HoneycombSite           brick wall: all horizontal nearest-neighbour edges,
//                           vertical edge (x,y)~(x,y+1) iff x+y is even
//   StarHoneycombSite       honeycomb plus all diagonals of every hexagonal
//                           face; faces are {a,a+1,a+2} x {y,y+1}, a+y even
//
// A finite box is the induced subgraph on [0,L) x [0,L) (open boundary). A
// site lies on a side of the box when some lattice neighbour is beyond it.
enum class LatticeKind : std::uint8_t {
  SquareSite,
  ChessBoard,
  TriangularSite,
  TriangularBondCovering,
  StarSquareSite,
  StarHoneycombSite,
  HoneycombSite,
};

inline constexpr std::array<LatticeKind, 7> kAllLatticeKinds = {
    LatticeKind::SquareSite,        LatticeKind::ChessBoard,
    LatticeKind::TriangularSite,    LatticeKind::TriangularBondCovering,
    LatticeKind::StarSquareSite,    LatticeKind::StarHoneycombSite,
    LatticeKind::HoneycombSite,
};

// CLI names: square-site, square-bond, triangular-site, triangular-bond,
// star-square-site, star-honeycomb-site, honeycomb-site.
std::string_view to_string(LatticeKind kind);
LatticeKind parse_lattice_kind(std::string_view name);

struct Vertex {
  int x = 0;
  int y = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend Vertex operator+(Vertex a, Vertex b) { return {a.x + b.x, a.y + b.y}; }
  friend Vertex operator-(Vertex a, Vertex b) { return {a.x - b.x, a.y - b.y}; }
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class Side : std::uint8_t { Left = 0, Right = 1, Bottom = 2, Top = 3 };

namespace side_bits {
inline constexpr std::uint8_t kLeft = 1;
inline constexpr std::uint8_t kRight = 2;
inline constexpr std::uint8_t kBottom = 4;
inline constexpr std::uint8_t kTop = 8;
inline constexpr std::uint8_t kAny = kLeft | kRight | kBottom | kTop;
}  // namespace side_bits

// Translation by (1,0). Callers clip when the image leaves the box.
constexpr Vertex tilde(Vertex v) { return {v.x + 1, v.y}; }

// The kind whose site adjacency is the matching lattice of `kind`. The
// chess-board lattice is matched by its own (1,0)-translate, so it maps to
// itself. Throws UsageError for TriangularBondCovering.
LatticeKind matching_of(LatticeKind kind);

class FiniteGraph {
 public:
  using Index = std::int32_t;
  static constexpr Index kNone = -1;

  LatticeKind kind() const { return kind_; }
  int side() const { return side_; }
  std::size_t vertex_count() const { return coords_.size(); }
  std::size_t edge_count() const { return adj_.size() / 2; }

  // Maximum |D_v|; equals the bulk degree.
  int degree() const { return degree_; }

  Vertex vertex(Index i) const { return coords_[static_cast<std::size_t>(i)]; }
  bool contains(Vertex v) const { return index_of(v) != kNone; }
  Index index_of(Vertex v) const;
  Index at(Vertex v) const;  // throws UsageError when v is not a site

  std::span<const Index> neighbors(Index i) const {
    auto b = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(i)]);
    auto e = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(i) + 1]);
    return {adj_.data() + b, e - b};
  }
  bool adjacent(Index a, Index b) const;

  bool has_matching() const { return !match_offsets_.empty(); }
  std::span<const Index> matching_neighbors(Index i) const;
  bool matching_adjacent(Index a, Index b) const;

  std::span<const Index> boundary(Side s) const {
    return boundary_[static_cast<std::size_t>(s)];
  }
  std::uint8_t boundary_flags(Index i) const {
    return boundary_flags_[static_cast<std::size_t>(i)];
  }
  // Union of the four sides, ascending, without duplicates.
  std::span<const Index> boundary_all() const { return boundary_all_; }

  Index origin() const { return origin_; }

  // Index of tilde(vertex(i)), or kNone when it leaves the box.
  Index tilde_index(Index i) const { return index_of(tilde(vertex(i))); }

  // Planar position used for winding / point-in-polygon tests.
  Point2 embed(Index i) const;

  friend FiniteGraph build_box(LatticeKind kind, int side);

 private:
  FiniteGraph() = default;

  LatticeKind kind_ = LatticeKind::SquareSite;
  int side_ = 0;
  int degree_ = 0;
  std::vector<Vertex> coords_;
  std::vector<Index> lookup_;  // side*side, kNone where no site
  std::vector<Index> adj_offsets_;
  std::vector<Index> adj_;
  std::vector<Index> match_offsets_;
  std::vector<Index> match_;
  std::array<std::vector<Index>, 4> boundary_;
  std::vector<Index> boundary_all_;
  std::vector<std::uint8_t> boundary_flags_;
  Index origin_ = kNone;
};

// Finite box [0,L) x [0,L) of `kind`. Deterministic; throws UsageError when
// side < 1.
FiniteGraph build_box(LatticeKind kind, int side);

// Infinite-lattice neighbour offsets of the site at `v` (may depend on parity).
std::vector<Vertex> lattice_offsets(LatticeKind kind, Vertex v);

// Union of D_u over u in `vertices`, ascending. Members of the input appear
// only if they neighbour another member.
std::vector<FiniteGraph::Index> neighborhood_union(
    const FiniteGraph& graph, std::span<const FiniteGraph::Index> vertices);

}  // namespace sdperc
