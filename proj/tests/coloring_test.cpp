#include <cmath>

#include "doctest.h"
#include "sdperc/coloring.hpp"
#include "sdperc/error.hpp"
#include "sdperc/oracle.hpp"

using namespace sdperc;
using Index = FiniteGraph::Index;

namespace {

constexpr double kPc = 0.4073;

struct Fields {
  Config x, y;
};

Fields fields(const FiniteGraph& g, double p, double delta, std::uint64_t seed, std::uint64_t t) {
  return {sample_field(g, p, Stream(seed, t, FieldTag::X)),
          sample_field(g, delta, Stream(seed, t, FieldTag::Y))};
}

}  // namespace

TEST_CASE("tilde colouring examples") {
  FiniteGraph g = build_box(LatticeKind::ChessBoard, 6);
  Config red = red_tilde(g, Config(g, 1), Config(g)).bits;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    bool has_image = g.tilde_index(static_cast<Index>(i)) != FiniteGraph::kNone;
    CHECK(red[i] == has_image);
  }
  CHECK(red_tilde(g, Config(g, 1), Config(g, 1)).bits.count() == 0);
  CHECK(red_tilde(g, Config(g, 1), Config(g)).variant == RedVariant::Tilde);
  CHECK(has_tilde_map(LatticeKind::ChessBoard));
  CHECK_FALSE(has_tilde_map(LatticeKind::TriangularBondCovering));
  FiniteGraph t = build_box(LatticeKind::TriangularBondCovering, 4);
  CHECK_THROWS_AS(red_tilde(t, Config(t), Config(t)), UsageError);
}

TEST_CASE("tilde colouring marginals and pairwise independence") {
  FiniteGraph g = build_box(LatticeKind::ChessBoard, 4);
  const double p = 0.6, delta = 0.2, r = p * (1.0 - delta);
  const Index a = g.at({1, 1}), b = g.at({2, 1});  // b is a's image
  const int n = 100000;
  double counts[4] = {0, 0, 0, 0};
  for (int t = 0; t < n; ++t) {
    Fields f = fields(g, p, delta, 31, static_cast<std::uint64_t>(t));
    Config red = red_tilde(g, f.x, f.y).bits;
    counts[(red[static_cast<std::size_t>(a)] ? 1 : 0) + (red[static_cast<std::size_t>(b)] ? 2 : 0)] += 1;
  }
  const double expect[4] = {(1 - r) * (1 - r), r * (1 - r), (1 - r) * r, r * r};
  double chi2 = 0.0;
  for (int k = 0; k < 4; ++k) chi2 += std::pow(counts[k] - n * expect[k], 2) / (n * expect[k]);
  CHECK(chi2 < 16.27);  // 3 degrees of freedom, 0.1% level
}

TEST_CASE("tilde colouring law factorises exactly") {
  FiniteGraph g = build_box(LatticeKind::ChessBoard, 3);
  std::vector<Index> sites;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 3; ++y) sites.push_back(g.at({x, y}));
  const double p = 0.7, delta = 0.3, r = p * (1 - delta);
  std::vector<double> law = enumerate_tilde_red_law(g, sites, p, delta);
  REQUIRE(law.size() == 64);
  double total = 0.0;
  for (std::size_t code = 0; code < law.size(); ++code) {
    double prod = 1.0;
    for (std::size_t k = 0; k < sites.size(); ++k) prod *= (code >> k) & 1U ? r : 1 - r;
    CHECK(law[code] == doctest::Approx(prod).epsilon(1e-12));
    total += law[code];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("neighbourhood colouring examples") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 6);
  Fields f = fields(g, 0.5, 0.3, 2, 0);
  CHECK(red_neighborhood(g, f.x, Config(g)).bits == f.x);
  CHECK(red_neighborhood(g, Config(g), f.y).bits.count() == 0);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Fields h = fields(g, 0.7, 0.1, 3, t);
    Config red = red_neighborhood(g, h.x, h.y).bits;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      bool clear = true;
      for (Index u : g.neighbors(static_cast<Index>(i))) clear = clear && !h.y[static_cast<std::size_t>(u)];
      REQUIRE(red[i] == (h.x[i] && clear));
    }
  }
}

TEST_CASE("neighbourhood colouring interior marginal") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 3);
  const double p = 0.7, delta = 0.05;
  const double expect = p * std::pow(1 - delta, 8);
  const int n = 100000;
  int hits = 0;
  for (int t = 0; t < n; ++t) {
    Fields f = fields(g, p, delta, 17, static_cast<std::uint64_t>(t));
    hits += red_neighborhood(g, f.x, f.y).bits[static_cast<std::size_t>(g.origin())];
  }
  double mean = static_cast<double>(hits) / n;
  CHECK(std::abs(mean - expect) < 3.0 * std::sqrt(expect * (1 - expect) / n));
}

TEST_CASE("lemma constant") {
  CHECK(lemma_constant(1.0, 0.4, 8).c_epsilon == doctest::Approx(1.0 / 0.6));
  CHECK(lemma_constant(0.5, 0.5, 8).c_epsilon == doctest::Approx(512.0));
  CHECK(lemma_constant(0.5, kPc, 8).c_epsilon == doctest::Approx(256.0 / (1.0 - kPc)));
  CHECK_THROWS_AS(lemma_constant(0.0, 0.5, 8), UsageError);
  CHECK_THROWS_AS(lemma_constant(0.5, 1.0, 8), UsageError);
}

TEST_CASE("pattern probabilities agree with brute-force enumeration") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 5);
  const Index v = g.origin();
  auto family = patch_family(g, v, 1, 2, false);
  for (double p : {0.55, 0.7}) {
    for (double delta : {0.05, 0.3}) {
      for (const auto& F : family) {
        for (std::uint32_t code = 0; code < (1U << F.size()); ++code) {
          std::vector<std::uint8_t> pattern(F.size());
          for (std::size_t i = 0; i < F.size(); ++i) pattern[i] = (code >> i) & 1U;
          ConditionalResult oracle = enumerate_conditional(g, v, F, pattern, p, delta);
          CHECK(red_pattern_probability_with_y(g, F, pattern, v, true, p, delta) ==
                doctest::Approx(oracle.joint_y1).epsilon(1e-12));
          CHECK(red_pattern_probability_with_y(g, F, pattern, v, false, p, delta) ==
                doctest::Approx(oracle.joint_y0).epsilon(1e-12));
          CHECK(red_pattern_probability(g, F, pattern, p, delta) ==
                doctest::Approx(oracle.joint_y0 + oracle.joint_y1).epsilon(1e-12));

          ConditionalResult rv = enumerate_red_conditional(g, v, F, pattern, p, delta);
          std::vector<Index> with_v = F;
          with_v.push_back(v);
          std::vector<std::uint8_t> with_one = pattern;
          with_one.push_back(1);
          CHECK(red_pattern_probability(g, with_v, with_one, p, delta) ==
                doctest::Approx(rv.joint_y1).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("lemma cases") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 7);
  const Index v = g.origin();
  const double p = 0.6, delta = 0.1, eps = 0.2;

  std::vector<Index> far{g.at({0, 0}), g.at({6, 6})};
  LemmaReport disjoint = verify_lemma_bound(g, v, far, p, delta, eps, kPc);
  CHECK(disjoint.all_pass);
  for (const auto& row : disjoint.rows) {
    CHECK(row.lemma_case == LemmaCase::Disjoint);
    CHECK(row.conditional == doctest::Approx(delta).epsilon(1e-12));
  }

  std::vector<Index> near{g.at({4, 3}), g.at({3, 5}), g.at({2, 2})};
  LemmaReport rep = verify_lemma_bound(g, v, near, p, delta, eps, kPc);
  CHECK(rep.all_pass);
  int forced = 0, vacant = 0;
  for (const auto& row : rep.rows) {
    if (row.lemma_case == LemmaCase::ForcedZero) {
      ++forced;
      CHECK(row.joint_y1 == 0.0);
    }
    if (row.lemma_case == LemmaCase::AllVacant) {
      ++vacant;
      CHECK(row.conditional <= delta / ((1 - delta) * std::pow(1 - p, 8)));
    }
  }
  CHECK(forced > 0);
  CHECK(vacant > 0);

  CHECK_THROWS_AS(verify_lemma_bound(g, v, near, 0.9, delta, eps, kPc), UsageError);
  CHECK_THROWS_AS(verify_lemma_bound(g, v, near, 0.3, delta, eps, kPc), UsageError);
  CHECK_THROWS_AS(verify_lemma_bound(g, v, near, p, 0.0, eps, kPc), UsageError);
  CHECK_THROWS_AS(verify_lemma_bound(g, v, near, p, 0.5, eps, kPc), UsageError);
}

TEST_CASE("domination on patches") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 7);
  const Index v = g.origin();
  std::vector<Index> two{g.at({4, 3}), g.at({3, 4})};
  DominationPatchReport zero = verify_domination_patch(g, v, two, 0.55, 0.0, 0.4, kPc);
  CHECK(zero.all_pass);
  for (const auto& row : zero.rows) CHECK(row.conditional == doctest::Approx(0.55).epsilon(1e-12));

  DominationPatchReport small = verify_domination_patch(g, v, two, 0.55, 1e-3, 0.4, kPc);
  CHECK(small.all_pass);
  CHECK(small.rows.size() == 4);
  CHECK_THROWS_AS(verify_domination_patch(g, v, std::vector<Index>{v}, 0.55, 1e-3, 0.4, kPc),
                  UsageError);

  // The exact conditional matches brute force.
  for (const auto& row : small.rows) {
    ConditionalResult r = enumerate_red_conditional(g, v, two, row.pattern, 0.55, 1e-3);
    CHECK(row.conditional == doctest::Approx(r.conditional).epsilon(1e-12));
  }
}

TEST_CASE("domination level inversion") {
  LemmaConstant c = lemma_constant(0.4, kPc, 8);
  double delta = delta_for_domination_level(0.55, 0.45, c);
  CHECK(0.55 * (1 - c.d * c.c_epsilon * delta) == doctest::Approx(0.45));
}

TEST_CASE("domination at scale on a small box") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 24);
  LemmaConstant c = lemma_constant(0.225, kPc, 8);
  double delta = delta_for_domination_level(0.55, kPc + 0.04, c);
  DominationScaleReport r = verify_domination_scale(g, 0.55, delta, 0.225, kPc, 300, 5);
  CHECK(r.q == doctest::Approx(kPc + 0.04));
  CHECK(r.pass);
  CHECK_THROWS_AS(verify_domination_scale(g, 0.55, 1e-3, 0.225, kPc, 10, 5), UsageError);
}

TEST_CASE("patch families") {
  FiniteGraph g = build_box(LatticeKind::StarSquareSite, 7);
  CHECK(patch_family(g, g.origin(), 1, 2, false).size() == 8 + 28);
  CHECK(patch_family(g, g.origin(), 1, 1, true).size() == 9);
}

TEST_CASE("blocking mechanisms hold on samples") {
  FiniteGraph cb = build_box(LatticeKind::ChessBoard, 16);
  std::size_t found = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    SdpSample s = sdp_sample(cb, {0.6, 0.05, 12, 1}, InfinityProxy::SpansOpposite, t);
    BlockingCheck b = check_tilde_blocking(cb, s);
    CHECK(b.violations == 0);
    CHECK(b.translate_in_box);
    found += b.circuit_found;
    CHECK(red_containment_violations(cb, red_tilde(cb, s.x, s.y).bits, s.x,
                                     InfinityProxy::SpansOpposite) == 0);
  }
  CHECK(found > 0);

  FiniteGraph st = build_box(LatticeKind::StarSquareSite, 16);
  for (std::uint64_t t = 0; t < 200; ++t) {
    SdpSample s = sdp_sample(st, {0.7, 0.02, 13, 1}, InfinityProxy::SpansOpposite, t);
    BlockingCheck b = check_neighborhood_blocking(st, s);
    CHECK(b.violations == 0);
    CHECK(red_containment_violations(st, red_neighborhood(st, s.x, s.y).bits, s.x,
                                     InfinityProxy::SpansOpposite) == 0);
  }
}
