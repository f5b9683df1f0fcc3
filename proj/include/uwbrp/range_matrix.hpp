#pragma once

#include <vector>

namespace uwbrp {

/// Square grid of inter-agent range values for one snapshot, indexed by
/// 1-based antenna pair (i, j): i on robot A, j on robot B. Raw physical
/// entries are finite and non-negative; calibrated entries may be any
/// finite value. NaN marks a missing (dropped) sample in replayed data.
class RangeMatrix {
 public:
  explicit RangeMatrix(int antenna_count, double fill = 0.0, double timestamp = 0.0);

  int antenna_count() const { return n_; }

  double at(int i, int j) const { return values_[flat(i, j)]; }
  double& at(int i, int j) { return values_[flat(i, j)]; }

  double timestamp() const { return timestamp_; }
  void set_timestamp(double t) { timestamp_ = t; }

  // Row-major backing store, (i, j) at [(i-1)*N + (j-1)].
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t flat(int i, int j) const;  // throws IndexError

  int n_ = 0;
  double timestamp_ = 0.0;
  std::vector<double> values_;
};

}  // namespace uwbrp
