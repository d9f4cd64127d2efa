#pragma once

#include <stdexcept>
#include <string>

namespace mvote {

/// Malformed input text (election, metric, graph, weight files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A library invariant failed. Seeing this means a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mvote
