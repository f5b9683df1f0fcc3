#pragma once

#include <stdexcept>
#include <string>

namespace uwbrp {

// Error taxonomy used across the library. Everything derives from the
// standard exception hierarchy so callers can catch as broadly or as
// narrowly as they like.

// Antenna/pair index outside [1, N].
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Matrix/window dimension mismatch.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid configuration value (non-finite, out of admissible range, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Pose with zero planar offset where the bearing between robots is needed.
class DegenerateGeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Query against an empty buffer/series.
class NoDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A calibration pair with too few usable samples; message names the pair.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uwbrp
