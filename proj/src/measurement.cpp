#include "uwbrp/measurement.hpp"

#include <cmath>
#include <string>

#include "uwbrp/errors.hpp"

namespace uwbrp {

MeasurementWindow::MeasurementWindow(int antenna_count, int window)
    : n_(antenna_count), window_(window) {
  if (antenna_count < 1) {
    throw ParameterError("MeasurementWindow antenna count must be >= 1");
  }
  if (window < 1) {
    throw ParameterError("window size must be >= 1, got " + std::to_string(window));
  }
  const std::size_t pairs = static_cast<std::size_t>(n_) * n_;
  samples_.assign(pairs * static_cast<std::size_t>(window_), 0.0);
  head_.assign(pairs, 0);
  count_.assign(pairs, 0);
}

std::size_t MeasurementWindow::pair_index(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) {
    throw IndexError("antenna pair (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside [1, " + std::to_string(n_) + "]");
  }
  return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

void MeasurementWindow::push_raw(const RangeMatrix& sample) {
  if (sample.antenna_count() != n_) {
    throw ShapeError("sample is " + std::to_string(sample.antenna_count()) + "x" +
                     std::to_string(sample.antenna_count()) + ", window expects " +
                     std::to_string(n_) + "x" + std::to_string(n_));
  }
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= n_; ++j) {
      const double v = sample.at(i, j);
      if (std::isnan(v)) {
        continue;  // dropped packet
      }
      const std::size_t p = pair_index(i, j);
      samples_[p * window_ + head_[p]] = v;
      head_[p] = (head_[p] + 1) % window_;
      if (count_[p] < window_) {
        ++count_[p];
      }
    }
  }
  last_timestamp_ = sample.timestamp();
}

int MeasurementWindow::count(int i, int j) const { return count_[pair_index(i, j)]; }

double MeasurementWindow::latest(int i, int j) const {
  const std::size_t p = pair_index(i, j);
  if (count_[p] == 0) {
    throw NoDataError("no samples held for pair (" + std::to_string(i) + ", " +
                      std::to_string(j) + ")");
  }
  const int slot = (head_[p] + window_ - 1) % window_;
  return samples_[p * window_ + slot];
}

double MeasurementWindow::mean(int i, int j) const {
  const std::size_t p = pair_index(i, j);
  const int held = count_[p];
  if (held == 0) {
    throw NoDataError("no samples held for pair (" + std::to_string(i) + ", " +
                      std::to_string(j) + ")");
  }
  // Oldest-to-newest so the result is reproducible bit-for-bit.
  double sum = 0.0;
  const int oldest = (head_[p] + window_ - held) % window_;
  for (int s = 0; s < held; ++s) {
    sum += samples_[p * window_ + (oldest + s) % window_];
  }
  return sum / held;
}

double calibrated_range(const MeasurementWindow& window, const CalibrationTable& table, int i,
                        int j) {
  if (table.antenna_count() != window.antenna_count()) {
    throw ShapeError("calibration table size does not match measurement window");
  }
  return window.mean(i, j) - table.mu(i, j);
}

RangeMatrix calibrated_matrix(const MeasurementWindow& window, const CalibrationTable& table) {
  return variant_matrix(window, table, Variant::Unweighted);
}

RangeMatrix variant_matrix(const MeasurementWindow& window, const CalibrationTable& table,
                           Variant variant) {
  if (table.antenna_count() != window.antenna_count()) {
    throw ShapeError("calibration table size does not match measurement window");
  }
  const int n = window.antenna_count();
  RangeMatrix z(n, 0.0, window.last_timestamp());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      double v = 0.0;
      switch (variant) {
        case Variant::Raw:
          v = window.latest(i, j);
          break;
        case Variant::ShiftOnly:
          v = window.latest(i, j) - table.mu(i, j);
          break;
        case Variant::MovingAvgOnly:
          v = window.mean(i, j);
          break;
        case Variant::Unweighted:
        case Variant::Weighted:
          v = window.mean(i, j) - table.mu(i, j);
          break;
      }
      z.at(i, j) = v;
    }
  }
  return z;
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Raw:
      return "raw";
    case Variant::ShiftOnly:
      return "shift";
    case Variant::MovingAvgOnly:
      return "movavg";
    case Variant::Unweighted:
      return "unweighted";
    case Variant::Weighted:
      return "weighted";
  }
  return "unknown";
}

Variant variant_from_string(const std::string& name) {
  if (name == "raw") return Variant::Raw;
  if (name == "shift") return Variant::ShiftOnly;
  if (name == "movavg") return Variant::MovingAvgOnly;
  if (name == "unweighted") return Variant::Unweighted;
  if (name == "weighted") return Variant::Weighted;
  throw ParameterError("unknown variant \"" + name +
                       "\" (expected raw|shift|movavg|unweighted|weighted)");
}

}  // namespace uwbrp
