#pragma once

#include <stdexcept>
#include <string>

namespace speig {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; the message carries the line number when known.
struct ParseError : Error {
  using Error::Error;
};

// Invalid or empty target interval (also: interval outside the spectrum).
struct IntervalError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

}  // namespace speig
