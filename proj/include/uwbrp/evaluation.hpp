#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uwbrp/calibration_table.hpp"
#include "uwbrp/dataset_io.hpp"
#include "uwbrp/estimator.hpp"

namespace uwbrp {

struct EstimateSample {
  double t = 0.0;
  Pose2D estimate{};
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  std::optional<Pose2D> gt;               // interpolated relative ground truth
  std::optional<double> position_error;   // meters
  std::optional<double> heading_error;    // radians, in [0, pi]
};

struct AlgorithmRun {
  std::string name;
  EstimatorConfig config{};
  std::vector<EstimateSample> samples;
};

struct TrialReport {
  double estimate_rate_hz = 10.0;
  bool has_ground_truth = false;
  std::vector<AlgorithmRun> runs;
};

struct ErrorStats {
  double mean = 0.0;
  double max = 0.0;
  double stddev = 0.0;  // population (N divisor)
  std::size_t count = 0;
};

struct SummaryRow {
  std::string algorithm;
  ErrorStats position;      // meters
  ErrorStats heading;       // radians
};

// Stream a 50 Hz dataset through each config's measurement window and
// solve at estimate_rate_hz instants (two-stage for the weighted variant,
// single stage otherwise). Errors are computed against ground truth
// interpolated at the estimate instants: linear in position, shortest-arc
// in heading. Missing ground truth skips the metrics with a warning.
TrialReport replay(const std::vector<DatasetRecord>& dataset,
                   const std::vector<EstimatorConfig>& configs, const CalibrationTable& table,
                   double estimate_rate_hz = 10.0, const AntennaLayout& layout = {});

// Mean / max / population-std of both error kinds per algorithm. Throws
// NoDataError when no estimate carries ground truth.
std::vector<SummaryRow> summarize(const TrialReport& report);

// Monospace table, heading stats in degrees.
std::string format_summary_table(const std::vector<SummaryRow>& rows);

// Full JSON report: config echo, per-algorithm summary and series.
std::string report_json(const TrialReport& report, const std::vector<SummaryRow>& summary);

}  // namespace uwbrp
