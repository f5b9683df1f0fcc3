#pragma once

#include <vector>

#include "uwbrp/calibration_table.hpp"
#include "uwbrp/range_matrix.hpp"
#include "uwbrp/variant.hpp"

namespace uwbrp {

/// Per-pair ring buffers holding the W most recent raw range samples.
/// Single-writer: one ingest stream calls push_raw, any number of readers
/// may query between pushes. NaN entries in a pushed snapshot are treated
/// as dropped packets and simply skipped, so pair buffers can hold
/// different sample counts.
class MeasurementWindow {
 public:
  static constexpr int kDefaultWindow = 50;

  explicit MeasurementWindow(int antenna_count, int window = kDefaultWindow);

  void push_raw(const RangeMatrix& sample);  // ShapeError on dimension mismatch

  int antenna_count() const { return n_; }
  int window() const { return window_; }

  // Samples currently held for pair (i, j), in [0, W].
  int count(int i, int j) const;

  // Most recent raw sample for the pair. NoDataError if none.
  double latest(int i, int j) const;

  // Mean of the held samples (W' = min(W, count) during warm-up),
  // accumulated oldest-to-newest. NoDataError if none.
  double mean(int i, int j) const;

  // Timestamp of the last pushed snapshot.
  double last_timestamp() const { return last_timestamp_; }

 private:
  std::size_t pair_index(int i, int j) const;  // throws IndexError

  int n_ = 0;
  int window_ = 0;
  double last_timestamp_ = 0.0;
  std::vector<double> samples_;  // [pair][slot], slot = ring position
  std::vector<int> head_;        // next write slot per pair
  std::vector<int> count_;
};

// Calibrated measurement z_hat for one pair: mean of the buffered samples
// minus the pair's bias.
double calibrated_range(const MeasurementWindow& window, const CalibrationTable& table, int i,
                        int j);

// Elementwise calibrated_range over all pairs; timestamp carries over from
// the last pushed snapshot.
RangeMatrix calibrated_matrix(const MeasurementWindow& window, const CalibrationTable& table);

// Measurement matrix for a given algorithm variant: raw latest, bias-shifted
// latest, plain window mean, or the fully calibrated mean.
RangeMatrix variant_matrix(const MeasurementWindow& window, const CalibrationTable& table,
                           Variant variant);

}  // namespace uwbrp
