#include "sdperc/config.hpp"

#include <algorithm>
#include <string>

#include "sdperc/error.hpp"

namespace sdperc {

namespace {

void require_same(const Config& a, const Config& b) {
  if (!(a.tag() == b.tag())) throw UsageError("configurations live on different graphs");
}

}  // namespace

Config::Config(const FiniteGraph& g, std::vector<std::uint8_t> bits)
    : tag_(tag_of(g)), bits_(std::move(bits)) {
  if (bits_.size() != g.vertex_count())
    throw UsageError("configuration has " + std::to_string(bits_.size()) +
                     " bits, graph has " + std::to_string(g.vertex_count()) + " sites");
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t Config::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void require_on(const FiniteGraph& g, const Config& c, const char* what) {
  if (!c.on(g))
    throw UsageError(std::string(what) + ": configuration does not belong to this " +
                     std::string(to_string(g.kind())) + " box of side " +
                     std::to_string(g.side()));
}

Config operator|(const Config& a, const Config& b) {
  require_same(a, b);
  Config out = a;
  auto ob = out.bits();
  auto bb = b.bits();
  for (std::size_t i = 0; i < ob.size(); ++i) ob[i] |= bb[i];
  return out;
}

Config operator&(const Config& a, const Config& b) {
  require_same(a, b);
  Config out = a;
  auto ob = out.bits();
  auto bb = b.bits();
  for (std::size_t i = 0; i < ob.size(); ++i) ob[i] &= bb[i];
  return out;
}

Config operator~(const Config& a) {
  Config out = a;
  for (auto& bit : out.bits()) bit ^= 1;
  return out;
}

bool pointwise_leq(const Config& a, const Config& b) {
  require_same(a, b);
  auto ab = a.bits();
  auto bb = b.bits();
  for (std::size_t i = 0; i < ab.size(); ++i)
    if (ab[i] > bb[i]) return false;
  return true;
}

}  // namespace sdperc
