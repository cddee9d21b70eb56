#pragma once

#include <stdexcept>
#include <string>

namespace sdperc {

// Bad input: out-of-range parameters, mismatched graphs, malformed sets.
// The CLI maps this to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Bisection that cannot bracket or converge, zero-probability conditioning,
// instances too large to enumerate. The CLI maps this to exit status 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sdperc
