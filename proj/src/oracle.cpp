#include "sdperc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sdperc/error.hpp"

namespace sdperc {

using Index = FiniteGraph::Index;

namespace {

struct KahanSum {
  long double sum = 0.0L;
  long double carry = 0.0L;

  void add(long double x) {
    long double y = x - carry;
    long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void check_probability(double q, const char* name) {
  if (!(q >= 0.0 && q <= 1.0)) throw UsageError(std::string(name) + " must lie in [0,1]");
}

void check_size(const FiniteGraph& graph) {
  if (graph.vertex_count() > kMaxOracleSites)
    throw NumericalError("graph has " + std::to_string(graph.vertex_count()) +
                         " sites; exact enumeration is limited to " +
                         std::to_string(kMaxOracleSites));
}

// weights[k] = q^k (1-q)^(n-k)
std::vector<long double> binomial_weights(double q, std::size_t n) {
  std::vector<long double> w(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    w[k] = std::pow(static_cast<long double>(q), static_cast<long double>(k)) *
           std::pow(1.0L - static_cast<long double>(q), static_cast<long double>(n - k));
  return w;
}

bool production_event(const FiniteGraph& g, const SdpSample& s, OracleEvent event) {
  switch (event) {
    case OracleEvent::Always: return true;
    case OracleEvent::Theta: return origin_reaches_boundary(g, s.z);
    case OracleEvent::Spanning: return spans_left_right(g, s.z);
    case OracleEvent::OriginOccupied: return s.z[static_cast<std::size_t>(g.origin())];
  }
  return false;
}

// ---- independent connectivity for the recursive route ----------------------

struct Dfs {
  const FiniteGraph& g;
  std::vector<int> mark;
  std::vector<Index> stack;
  std::vector<Index> members;

  explicit Dfs(const FiniteGraph& graph) : g(graph), mark(graph.vertex_count(), 0) {}

  // Collects the occupied component of `start` into `members`; returns the
  // union of the side masks it touches.
  unsigned component(const std::vector<char>& occ, Index start, int stamp) {
    members.clear();
    stack.assign(1, start);
    mark[static_cast<std::size_t>(start)] = stamp;
    unsigned sides = 0;
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      members.push_back(v);
      sides |= g.boundary_flags(v);
      for (Index u : g.neighbors(v)) {
        auto ui = static_cast<std::size_t>(u);
        if (occ[ui] && mark[ui] != stamp) {
          mark[ui] = stamp;
          stack.push_back(u);
        }
      }
    }
    return sides;
  }
};

bool proxy_infinite(unsigned sides, InfinityProxy proxy) {
  const bool left = sides & 1U, right = sides & 2U, bottom = sides & 4U, top = sides & 8U;
  if (proxy == InfinityProxy::TouchesBoundary) return left || right || bottom || top;
  return (left && right) || (bottom && top);
}

struct Recursion {
  const FiniteGraph& g;
  InfinityProxy proxy;
  OracleEvent event;
  std::size_t n;
  long double p, delta;
  std::vector<char> x, y, xstar, z;
  Dfs dfs;
  int stamp = 0;
  KahanSum hit;
  KahanSum total;
  std::uint64_t leaves = 0;

  Recursion(const FiniteGraph& graph, InfinityProxy pr, OracleEvent ev, double pp, double dd)
      : g(graph), proxy(pr), event(ev), n(graph.vertex_count()), p(pp), delta(dd),
        x(n, 0), y(n, 0), xstar(n, 0), z(n, 0), dfs(graph) {}

  void compute_xstar() {
    std::fill(xstar.begin(), xstar.end(), 0);
    ++stamp;
    for (std::size_t i = 0; i < n; ++i) {
      if (!x[i] || dfs.mark[i] == stamp) continue;
      unsigned sides = dfs.component(x, static_cast<Index>(i), stamp);
      if (proxy_infinite(sides, proxy)) continue;
      for (Index m : dfs.members) xstar[static_cast<std::size_t>(m)] = 1;
    }
  }

  bool evaluate() {
    for (std::size_t i = 0; i < n; ++i) z[i] = (xstar[i] || y[i]) ? 1 : 0;
    const auto o = static_cast<std::size_t>(g.origin());
    switch (event) {
      case OracleEvent::Always: return true;
      case OracleEvent::OriginOccupied: return z[o] != 0;
      case OracleEvent::Theta:
        if (!z[o]) return false;
        ++stamp;
        return dfs.component(z, g.origin(), stamp) != 0;
      case OracleEvent::Spanning:
        ++stamp;
        for (std::size_t i = 0; i < n; ++i) {
          if (!z[i] || dfs.mark[i] == stamp) continue;
          unsigned sides = dfs.component(z, static_cast<Index>(i), stamp);
          if ((sides & 1U) && (sides & 2U)) return true;
        }
        return false;
    }
    return false;
  }

  // Variables 0..n-1 are X, n..2n-1 are Y.
  void run(std::size_t var, long double weight) {
    if (weight == 0.0L) return;
    if (var == n) compute_xstar();
    if (var == 2 * n) {
      ++leaves;
      total.add(weight);
      if (evaluate()) hit.add(weight);
      return;
    }
    const bool is_x = var < n;
    const long double q = is_x ? p : delta;
    auto& bits = is_x ? x : y;
    const std::size_t site = is_x ? var : var - n;
    bits[site] = 0;
    run(var + 1, weight * (1.0L - q));
    bits[site] = 1;
    run(var + 1, weight * q);
    bits[site] = 0;
  }
};

}  // namespace

std::string_view to_string(OracleEvent event) {
  switch (event) {
    case OracleEvent::Always: return "always";
    case OracleEvent::Theta: return "theta";
    case OracleEvent::Spanning: return "spanning";
    case OracleEvent::OriginOccupied: return "origin";
  }
  return "?";
}

OracleEvent parse_oracle_event(std::string_view name) {
  if (name == "always") return OracleEvent::Always;
  if (name == "theta") return OracleEvent::Theta;
  if (name == "spanning") return OracleEvent::Spanning;
  if (name == "origin") return OracleEvent::OriginOccupied;
  throw UsageError("unknown oracle event '" + std::string(name) + "'");
}

ExactResult enumerate_event(const FiniteGraph& graph, double p, double delta, InfinityProxy proxy,
                            const SamplePredicate& event, std::string name) {
  check_probability(p, "p");
  check_probability(delta, "delta");
  check_size(graph);
  const std::size_t n = graph.vertex_count();
  const auto wx = binomial_weights(p, n);
  const auto wy = binomial_weights(delta, n);
  const std::uint32_t masks = std::uint32_t{1} << n;

  SdpSample s{Config(graph), Config(graph), Config(graph), Config(graph)};
  KahanSum acc;
  for (std::uint32_t xm = 0; xm < masks; ++xm) {
    const long double xw = wx[static_cast<std::size_t>(std::popcount(xm))];
    if (xw == 0.0L) continue;
    for (std::size_t i = 0; i < n; ++i) s.x.set(i, (xm >> i) & 1U);
    s.xstar = destroy(graph, s.x, proxy);
    for (std::uint32_t ym = 0; ym < masks; ++ym) {
      const long double w = xw * wy[static_cast<std::size_t>(std::popcount(ym))];
      if (w == 0.0L) continue;
      for (std::size_t i = 0; i < n; ++i) {
        bool yi = (ym >> i) & 1U;
        s.y.set(i, yi);
        s.z.set(i, yi || s.xstar[i]);
      }
      if (event(graph, s)) acc.add(w);
    }
  }
  return {std::move(name), static_cast<double>(acc.sum),
          static_cast<std::uint64_t>(masks) * masks};
}

ExactResult enumerate_event(const FiniteGraph& graph, double p, double delta, InfinityProxy proxy,
                            OracleEvent event) {
  return enumerate_event(
      graph, p, delta, proxy,
      [event](const FiniteGraph& g, const SdpSample& s) { return production_event(g, s, event); },
      std::string(to_string(event)));
}

ExactResult enumerate_event_recursive(const FiniteGraph& graph, double p, double delta,
                                      InfinityProxy proxy, OracleEvent event) {
  check_probability(p, "p");
  check_probability(delta, "delta");
  check_size(graph);
  Recursion r(graph, proxy, event, p, delta);
  r.run(0, 1.0L);
  return {std::string(to_string(event)), static_cast<double>(r.hit.sum), r.leaves};
}

namespace {

struct PatchVars {
  std::vector<Index> x_sites;  // X variables
  std::vector<Index> y_sites;  // Y variables
  std::vector<int> y_slot;     // graph site -> position in y_sites, or -1
};

PatchVars patch_vars(const FiniteGraph& graph, std::span<const Index> red_sites, Index v) {
  PatchVars pv;
  pv.x_sites.assign(red_sites.begin(), red_sites.end());
  pv.y_slot.assign(graph.vertex_count(), -1);
  auto want = [&](Index w) {
    if (pv.y_slot[static_cast<std::size_t>(w)] < 0) {
      pv.y_slot[static_cast<std::size_t>(w)] = static_cast<int>(pv.y_sites.size());
      pv.y_sites.push_back(w);
    }
  };
  if (v != FiniteGraph::kNone) want(v);
  for (Index u : red_sites)
    for (Index w : graph.neighbors(u)) want(w);
  if (pv.x_sites.size() + pv.y_sites.size() > 26)
    throw NumericalError("patch has too many free variables to enumerate");
  return pv;
}

void check_patch(const FiniteGraph& graph, std::span<const Index> sites,
                 std::span<const std::uint8_t> pattern, Index v) {
  if (sites.size() != pattern.size()) throw UsageError("pattern length differs from |F|");
  std::vector<Index> sorted(sites.begin(), sites.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("F repeats a site");
  for (Index u : sites)
    if (u < 0 || static_cast<std::size_t>(u) >= graph.vertex_count())
      throw UsageError("F site out of range");
  if (v < 0 || static_cast<std::size_t>(v) >= graph.vertex_count())
    throw UsageError("site v out of range");
}

// Sums the law of (R on red_sites) over X on red_sites and Y on their
// neighbourhoods (plus v); `visit(red_bits, y_bits, weight)` sees each term.
template <class Visit>
std::uint64_t enumerate_patch(const FiniteGraph& graph, const PatchVars& pv, double p, double delta,
                              Visit&& visit) {
  const std::size_t nx = pv.x_sites.size();
  const std::size_t ny = pv.y_sites.size();
  const auto wx = binomial_weights(p, nx);
  const auto wy = binomial_weights(delta, ny);
  std::vector<std::uint32_t> nbr_mask(nx, 0);
  for (std::size_t k = 0; k < nx; ++k)
    for (Index w : graph.neighbors(pv.x_sites[k]))
      nbr_mask[k] |= std::uint32_t{1} << pv.y_slot[static_cast<std::size_t>(w)];
  const std::uint64_t xmasks = std::uint64_t{1} << nx;
  const std::uint64_t ymasks = std::uint64_t{1} << ny;
  for (std::uint64_t ym = 0; ym < ymasks; ++ym) {
    const long double yw = wy[static_cast<std::size_t>(std::popcount(ym))];
    for (std::uint64_t xm = 0; xm < xmasks; ++xm) {
      std::uint32_t red = 0;
      for (std::size_t k = 0; k < nx; ++k)
        if (((xm >> k) & 1U) && (ym & nbr_mask[k]) == 0) red |= std::uint32_t{1} << k;
      visit(red, static_cast<std::uint32_t>(ym),
            yw * wx[static_cast<std::size_t>(std::popcount(xm))]);
    }
  }
  return xmasks * ymasks;
}

std::uint32_t pack(std::span<const std::uint8_t> pattern) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < pattern.size(); ++i)
    if (pattern[i]) bits |= std::uint32_t{1} << i;
  return bits;
}

}  // namespace

ConditionalResult enumerate_conditional(const FiniteGraph& graph, Index v,
                                        std::span<const Index> F,
                                        std::span<const std::uint8_t> pattern, double p,
                                        double delta) {
  check_probability(p, "p");
  check_probability(delta, "delta");
  check_patch(graph, F, pattern, v);
  PatchVars pv = patch_vars(graph, F, v);
  const std::uint32_t want = pack(pattern);
  KahanSum y1, y0;
  ConditionalResult out;
  out.configurations = enumerate_patch(graph, pv, p, delta,
                                       [&](std::uint32_t red, std::uint32_t ybits, long double w) {
                                         if (red != want) return;
                                         (ybits & 1U ? y1 : y0).add(w);  // v is Y slot 0
                                       });
  out.joint_y1 = static_cast<double>(y1.sum);
  out.joint_y0 = static_cast<double>(y0.sum);
  if (out.joint_y1 + out.joint_y0 <= 0.0) throw NumericalError("pattern has zero probability");
  out.conditional = out.joint_y1 / (out.joint_y1 + out.joint_y0);
  return out;
}

ConditionalResult enumerate_red_conditional(const FiniteGraph& graph, Index v,
                                            std::span<const Index> F,
                                            std::span<const std::uint8_t> pattern, double p,
                                            double delta) {
  check_probability(p, "p");
  check_probability(delta, "delta");
  check_patch(graph, F, pattern, v);
  if (std::find(F.begin(), F.end(), v) != F.end()) throw UsageError("F must not contain v");
  std::vector<Index> sites(F.begin(), F.end());
  sites.push_back(v);
  PatchVars pv = patch_vars(graph, sites, FiniteGraph::kNone);
  const std::uint32_t want = pack(pattern);
  const std::uint32_t f_mask = (std::uint32_t{1} << F.size()) - 1;
  const std::uint32_t v_bit = std::uint32_t{1} << F.size();
  KahanSum r1, r0;
  ConditionalResult out;
  out.configurations = enumerate_patch(graph, pv, p, delta,
                                       [&](std::uint32_t red, std::uint32_t, long double w) {
                                         if ((red & f_mask) != want) return;
                                         (red & v_bit ? r1 : r0).add(w);
                                       });
  out.joint_y1 = static_cast<double>(r1.sum);
  out.joint_y0 = static_cast<double>(r0.sum);
  if (out.joint_y1 + out.joint_y0 <= 0.0) throw NumericalError("pattern has zero probability");
  out.conditional = out.joint_y1 / (out.joint_y1 + out.joint_y0);
  return out;
}

std::vector<double> enumerate_tilde_red_law(const FiniteGraph& graph, std::span<const Index> sites,
                                            double p, double delta) {
  check_probability(p, "p");
  check_probability(delta, "delta");
  check_size(graph);
  if (sites.size() > 16) throw NumericalError("too many sites for a joint law");
  const std::size_t n = graph.vertex_count();
  std::vector<int> partner(sites.size());
  for (std::size_t k = 0; k < sites.size(); ++k) {
    Vertex v = graph.vertex(sites[k]);
    partner[k] = graph.index_of({v.x + 1, v.y});
  }
  const auto wx = binomial_weights(p, n);
  const auto wy = binomial_weights(delta, n);
  std::vector<KahanSum> law(std::size_t{1} << sites.size());
  const std::uint32_t masks = std::uint32_t{1} << n;
  for (std::uint32_t xm = 0; xm < masks; ++xm) {
    for (std::uint32_t ym = 0; ym < masks; ++ym) {
      std::size_t code = 0;
      for (std::size_t k = 0; k < sites.size(); ++k) {
        bool red = partner[k] >= 0 && ((xm >> sites[k]) & 1U) && !((ym >> partner[k]) & 1U);
        if (red) code |= std::size_t{1} << k;
      }
      law[code].add(wx[static_cast<std::size_t>(std::popcount(xm))] *
                    wy[static_cast<std::size_t>(std::popcount(ym))]);
    }
  }
  std::vector<double> out(law.size());
  for (std::size_t k = 0; k < law.size(); ++k) out[k] = static_cast<double>(law[k].sum);
  return out;
}

}  // namespace sdperc
