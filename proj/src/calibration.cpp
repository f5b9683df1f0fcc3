#include "uwbrp/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uwbrp/errors.hpp"

namespace uwbrp {

namespace {

// Sweep protocol constants.
constexpr double kSpinRate = deg2rad(60.0);   // B's in-place rate
constexpr double kSpinDuration = kTwoPi / kSpinRate;  // 6 s per revolution
constexpr double kStepAngle = deg2rad(30.0);  // A's increment per cycle
constexpr double kStepDuration = 1.5;         // A's turn time (20 deg/s)
constexpr int kCycles = 12;                   // covers 360 deg of A headings
constexpr double kSweepRate = 50.0;

double aggregate_errors(std::vector<double>& errors, BiasEstimationOptions::Aggregate agg) {
  if (agg == BiasEstimationOptions::Aggregate::Median) {
    std::sort(errors.begin(), errors.end());
    const std::size_t m = errors.size() / 2;
    if (errors.size() % 2 == 1) {
      return errors[m];
    }
    return 0.5 * (errors[m - 1] + errors[m]);
  }
  double sum = 0.0;
  for (double e : errors) {
    sum += e;
  }
  return sum / static_cast<double>(errors.size());
}

}  // namespace

CalibrationTable estimate_bias(const std::vector<CalibrationRecord>& records,
                               const AntennaLayout& layout, const WeightParams& mask_params,
                               const BiasEstimationOptions& options) {
  if (records.empty()) {
    throw NoDataError("no calibration records");
  }
  if (options.mask_threshold < 0.0 || options.mask_threshold > 1.0) {
    throw ParameterError("mask_threshold must be in [0, 1]");
  }
  if (options.trim_fraction < 0.0 || options.trim_fraction >= 1.0) {
    throw ParameterError("trim_fraction must be in [0, 1)");
  }
  const int n = layout.count;

  // Relative poses and true distances are shared by all pairs.
  std::vector<Pose2D> rel;
  rel.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.raw.antenna_count() != n) {
      throw ShapeError("calibration record range matrix does not match layout");
    }
    rel.push_back(relative_pose(rec.gt_a, rec.gt_b));
  }

  CalibrationTable table(n);
  std::vector<double> errors;
  errors.reserve(records.size());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      errors.clear();
      for (std::size_t k = 0; k < records.size(); ++k) {
        const double raw = records[k].raw.at(i, j);
        if (std::isnan(raw)) {
          continue;
        }
        if (options.method == BiasEstimationOptions::Method::WeightMask) {
          if (rel[k].x == 0.0 && rel[k].y == 0.0) {
            continue;  // bearing undefined, cannot be classified as clear
          }
          if (weight_pair(rel[k], i, j, mask_params, n) < options.mask_threshold) {
            continue;
          }
        }
        errors.push_back(raw - pairwise_distance(layout, rel[k], i, j));
      }
      if (options.method == BiasEstimationOptions::Method::TrimmedMean && !errors.empty()) {
        std::sort(errors.begin(), errors.end());
        const std::size_t keep =
            errors.size() - static_cast<std::size_t>(options.trim_fraction * errors.size());
        errors.resize(std::max<std::size_t>(keep, 1));
      }
      if (errors.size() < static_cast<std::size_t>(options.min_samples)) {
        throw CoverageError("pair (" + std::to_string(i) + ", " + std::to_string(j) + "): only " +
                            std::to_string(errors.size()) + " usable records, need >= " +
                            std::to_string(options.min_samples));
      }
      table.mu(i, j) = aggregate_errors(errors, options.aggregate);
    }
  }
  return table;
}

std::vector<CalibrationRecord> generate_calibration_sweep(double distance, const NoiseModel& noise,
                                                          Rng& rng, const AntennaLayout& layout) {
  if (!(distance > 2.0 * layout.radius)) {
    throw ParameterError("sweep distance must exceed the antenna diameter 2R");
  }
  const double cycle = kSpinDuration + kStepDuration;
  const double total = kCycles * cycle;
  const int ticks = static_cast<int>(std::floor(total * kSweepRate + 1e-9));

  std::vector<CalibrationRecord> records;
  records.reserve(ticks + 1);
  for (int k = 0; k <= ticks; ++k) {
    const double t = k / kSweepRate;
    int c = static_cast<int>(std::floor(t / cycle));
    c = std::min(c, kCycles - 1);
    const double local = t - c * cycle;

    double heading_a = kStepAngle * c;
    double heading_b = 0.0;
    if (local <= kSpinDuration) {
      heading_b = kSpinRate * local;
    } else {
      heading_a += kStepAngle * (local - kSpinDuration) / kStepDuration;
    }

    CalibrationRecord rec;
    rec.t = t;
    rec.gt_a = Pose2D(0.0, 0.0, heading_a);
    rec.gt_b = Pose2D(distance, 0.0, heading_b);
    rec.raw = synth_ranges(relative_pose(rec.gt_a, rec.gt_b), layout, noise, rng);
    rec.raw.set_timestamp(t);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CalibrationRecord> calibration_records_from_dataset(
    const std::vector<DatasetRecord>& records) {
  std::vector<CalibrationRecord> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    if (!rec.gt_a || !rec.gt_b) {
      throw NoDataError("calibration requires ground truth on every record");
    }
    out.push_back({rec.t, *rec.gt_a, *rec.gt_b, rec.ranges});
  }
  return out;
}

std::vector<DatasetRecord> dataset_from_calibration_records(
    const std::vector<CalibrationRecord>& records) {
  std::vector<DatasetRecord> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    DatasetRecord d;
    d.t = rec.t;
    d.gt_a = rec.gt_a;
    d.gt_b = rec.gt_b;
    d.ranges = rec.raw;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace uwbrp
