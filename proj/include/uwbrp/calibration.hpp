#pragma once

#include <vector>

#include "uwbrp/calibration_table.hpp"
#include "uwbrp/dataset_io.hpp"
#include "uwbrp/geometry.hpp"
#include "uwbrp/pose.hpp"
#include "uwbrp/range_matrix.hpp"
#include "uwbrp/rng.hpp"
#include "uwbrp/simulator.hpp"
#include "uwbrp/weighting.hpp"

namespace uwbrp {

/// One calibration tick: ground truth for both robots is mandatory here
/// (calibration runs under mocap or simulator truth by definition).
struct CalibrationRecord {
  double t = 0.0;
  Pose2D gt_a{};
  Pose2D gt_b{};
  RangeMatrix raw{4};
};

struct BiasEstimationOptions {
  enum class Method {
    WeightMask,   // keep records whose ground-truth pair weight >= threshold
    TrimmedMean,  // drop the largest trim_fraction of errors per pair
  };
  enum class Aggregate { Mean, Median };

  Method method = Method::WeightMask;
  Aggregate aggregate = Aggregate::Mean;
  double mask_threshold = 1.0;  // only fully unobstructed headings by default
  double trim_fraction = 0.2;
  int min_samples = 100;
};

// Per-pair bias mu_ij = aggregate of (raw z_ij - true distance) over the
// usable records. Throws CoverageError naming the first pair with fewer
// than min_samples usable records.
CalibrationTable estimate_bias(const std::vector<CalibrationRecord>& records,
                               const AntennaLayout& layout, const WeightParams& mask_params,
                               const BiasEstimationOptions& options = {});

// Rotation-sweep protocol: robots `distance` apart, B spins full
// revolutions at 60 deg/s, A advances 30 degrees between revolutions; 12
// cycles, 50 Hz, about 90 s. Requires distance > 2R.
std::vector<CalibrationRecord> generate_calibration_sweep(double distance, const NoiseModel& noise,
                                                          Rng& rng,
                                                          const AntennaLayout& layout = {});

// Dataset rows <-> calibration records (rows without full ground truth are
// rejected).
std::vector<CalibrationRecord> calibration_records_from_dataset(
    const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> dataset_from_calibration_records(
    const std::vector<CalibrationRecord>& records);

}  // namespace uwbrp
