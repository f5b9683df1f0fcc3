#include "uwbrp/range_matrix.hpp"

#include <string>

#include "uwbrp/errors.hpp"

namespace uwbrp {

RangeMatrix::RangeMatrix(int antenna_count, double fill, double timestamp)
    : n_(antenna_count), timestamp_(timestamp) {
  if (antenna_count < 1) {
    throw ParameterError("RangeMatrix antenna count must be >= 1, got " +
                         std::to_string(antenna_count));
  }
  values_.assign(static_cast<std::size_t>(n_) * n_, fill);
}

std::size_t RangeMatrix::flat(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) {
    throw IndexError("antenna pair (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside [1, " + std::to_string(n_) + "]");
  }
  return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

}  // namespace uwbrp
