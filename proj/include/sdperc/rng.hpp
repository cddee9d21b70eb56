#pragma once

#include <cstdint>

namespace sdperc {

// Which independent field a stream feeds. Distinct tags give independent
// streams for the same (seed, trial).
enum class FieldTag : std::uint64_t {
  X = 1,          // initial occupation at p
  Y = 2,          // enhancement at delta
  Reference = 3,  // i.i.d. comparison fields
  Walk = 4,       // auxiliary randomness in tests and checks
};

namespace detail {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based stream: draw i is mix64(key + (i+1)*golden), i.e. SplitMix64
// started at a key derived from (seed, trial, tag). Any draw can be computed
// directly, so results never depend on how trials are scheduled, and two
// fields thresholded from the same stream are coupled site by site.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t trial, FieldTag tag)
      : key_(derive_key(seed, trial, tag)) {}

  static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t trial,
                                            FieldTag tag) {
    std::uint64_t k = detail::mix64(seed + detail::kGolden * static_cast<std::uint64_t>(tag));
    k = detail::mix64(k ^ detail::mix64(trial + 0x632BE59BD9B4E019ULL));
    return k;
  }

  std::uint64_t at(std::uint64_t i) const { return detail::mix64(key_ + (i + 1) * detail::kGolden); }

  // Uniform in [0,1) with 53 bits.
  double uniform_at(std::uint64_t i) const {
    return static_cast<double>(at(i) >> 11) * 0x1.0p-53;
  }

  std::uint64_t next() { return at(pos_++); }
  double uniform() { return uniform_at(pos_++); }

  // Uniform integer in [0, n) by rejection. n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do r = next();
    while (r >= limit);
    return r % n;
  }

  std::uint64_t position() const { return pos_; }

 private:
  std::uint64_t key_;
  std::uint64_t pos_ = 0;
};

}  // namespace sdperc
