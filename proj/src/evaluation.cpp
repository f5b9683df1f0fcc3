#include "uwbrp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "uwbrp/config_io.hpp"
#include "uwbrp/errors.hpp"
#include "uwbrp/log.hpp"
#include "uwbrp/measurement.hpp"

namespace uwbrp {

namespace {

struct GtSample {
  double t;
  Pose2D rel;
};

Pose2D interpolate(const GtSample& a, const GtSample& b, double t) {
  if (b.t <= a.t) {
    return a.rel;
  }
  const double u = (t - a.t) / (b.t - a.t);
  const double dx = a.rel.x + u * (b.rel.x - a.rel.x);
  const double dy = a.rel.y + u * (b.rel.y - a.rel.y);
  const double dtheta = wrap_pi(b.rel.theta - a.rel.theta);
  return {dx, dy, a.rel.theta + u * dtheta};
}

std::optional<Pose2D> gt_at(const std::vector<GtSample>& gt, double t) {
  if (gt.empty()) {
    return std::nullopt;
  }
  const double eps = 1e-9;
  if (t < gt.front().t - eps || t > gt.back().t + eps) {
    return std::nullopt;
  }
  auto it = std::lower_bound(gt.begin(), gt.end(), t,
                             [](const GtSample& s, double v) { return s.t < v; });
  if (it == gt.end()) {
    return gt.back().rel;
  }
  if (it == gt.begin()) {
    return gt.front().rel;
  }
  return interpolate(*(it - 1), *it, t);
}

ErrorStats stats_of(const std::vector<double>& values) {
  ErrorStats s;
  s.count = values.size();
  if (values.empty()) {
    return s;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    s.max = std::max(s.max, v);
  }
  s.mean = sum / values.size();
  double var = 0.0;
  for (double v : values) {
    var += (v - s.mean) * (v - s.mean);
  }
  s.stddev = std::sqrt(var / values.size());
  return s;
}

}  // namespace

TrialReport replay(const std::vector<DatasetRecord>& dataset,
                   const std::vector<EstimatorConfig>& configs, const CalibrationTable& table,
                   double estimate_rate_hz, const AntennaLayout& layout) {
  if (dataset.empty()) {
    throw NoDataError("dataset is empty");
  }
  if (configs.empty()) {
    throw ParameterError("replay needs at least one estimator config");
  }
  if (!(estimate_rate_hz > 0.0)) {
    throw ParameterError("estimate_rate_hz must be positive");
  }
  for (std::size_t k = 1; k < dataset.size(); ++k) {
    if (dataset[k].t < dataset[k - 1].t) {
      throw ParameterError("dataset timestamps must be non-decreasing");
    }
  }

  std::vector<GtSample> gt;
  gt.reserve(dataset.size());
  for (const auto& rec : dataset) {
    if (rec.gt_a && rec.gt_b) {
      gt.push_back({rec.t, relative_pose(*rec.gt_a, *rec.gt_b)});
    }
  }
  if (gt.empty()) {
    log::warn("dataset has no ground truth; error metrics will be skipped");
  }

  TrialReport report;
  report.estimate_rate_hz = estimate_rate_hz;
  report.has_ground_truth = !gt.empty();

  const double t0 = dataset.front().t;
  const double t_end = dataset.back().t;

  for (const auto& config : configs) {
    AlgorithmRun run;
    run.name = to_string(config.variant);
    run.config = config;

    MeasurementWindow window(table.antenna_count(), config.window);
    std::size_t next_record = 0;
    const long long ticks = static_cast<long long>(std::floor((t_end - t0) * estimate_rate_hz + 1e-9));
    for (long long k = 0; k <= ticks; ++k) {
      const double t = t0 + k / estimate_rate_hz;
      while (next_record < dataset.size() && dataset[next_record].t <= t + 1e-9) {
        window.push_raw(dataset[next_record].ranges);
        ++next_record;
      }

      RangeMatrix zhat(table.antenna_count());
      try {
        zhat = variant_matrix(window, table, config.variant);
      } catch (const NoDataError&) {
        continue;  // some pair has not produced a sample yet
      }

      const EstimateResult est = solve_two_stage(zhat, layout, config);

      EstimateSample sample;
      sample.t = t;
      sample.estimate = est.pose;
      sample.converged = est.converged;
      sample.iterations = est.iterations;
      sample.objective = est.objective_value;
      sample.gt = gt_at(gt, t);
      if (sample.gt) {
        sample.position_error = (est.pose.position() - sample.gt->position()).norm();
        sample.heading_error = std::abs(wrap_pi(est.pose.theta - sample.gt->theta));
      }
      run.samples.push_back(sample);
    }
    report.runs.push_back(std::move(run));
  }
  return report;
}

std::vector<SummaryRow> summarize(const TrialReport& report) {
  std::vector<SummaryRow> rows;
  std::size_t with_gt = 0;
  for (const auto& run : report.runs) {
    SummaryRow row;
    row.algorithm = run.name;
    std::vector<double> pos;
    std::vector<double> head;
    for (const auto& s : run.samples) {
      if (s.position_error) {
        pos.push_back(*s.position_error);
        head.push_back(*s.heading_error);
      }
    }
    with_gt += pos.size();
    row.position = stats_of(pos);
    row.heading = stats_of(head);
    rows.push_back(std::move(row));
  }
  if (with_gt == 0) {
    throw NoDataError("no estimates with ground truth to summarize");
  }
  return rows;
}

std::string format_summary_table(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  char line[200];
  std::snprintf(line, sizeof(line), "%-12s | %27s | %s\n", "", "Position error [m]",
                "Heading error [deg]");
  out << line;
  std::snprintf(line, sizeof(line), "%-12s | %8s %8s %8s | %8s %8s %8s\n", "Method", "Mean",
                "Max", "Std", "Mean", "Max", "Std");
  out << line;
  out << std::string(76, '-') << "\n";
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%-12s | %8.3f %8.3f %8.3f | %8.2f %8.2f %8.2f\n",
                  row.algorithm.c_str(), row.position.mean, row.position.max, row.position.stddev,
                  rad2deg(row.heading.mean), rad2deg(row.heading.max), rad2deg(row.heading.stddev));
    out << line;
  }
  return out.str();
}

std::string report_json(const TrialReport& report, const std::vector<SummaryRow>& summary) {
  nlohmann::json doc;
  doc["estimate_rate_hz"] = report.estimate_rate_hz;
  doc["has_ground_truth"] = report.has_ground_truth;

  nlohmann::json algorithms = nlohmann::json::array();
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const auto& run = report.runs[r];
    nlohmann::json a;
    a["name"] = run.name;
    a["config"] = estimator_config_to_json(run.config);
    if (r < summary.size()) {
      const auto& row = summary[r];
      a["summary"] = {
          {"position_m",
           {{"mean", row.position.mean},
            {"max", row.position.max},
            {"std", row.position.stddev},
            {"count", row.position.count}}},
          {"heading_deg",
           {{"mean", rad2deg(row.heading.mean)},
            {"max", rad2deg(row.heading.max)},
            {"std", rad2deg(row.heading.stddev)},
            {"count", row.heading.count}}},
      };
    }
    nlohmann::json series = nlohmann::json::array();
    for (const auto& s : run.samples) {
      nlohmann::json rec = {{"t", s.t},          {"x", s.estimate.x},
                            {"y", s.estimate.y}, {"theta", s.estimate.theta},
                            {"converged", s.converged}, {"iterations", s.iterations},
                            {"objective", s.objective}};
      if (s.gt) {
        rec["gt_x"] = s.gt->x;
        rec["gt_y"] = s.gt->y;
        rec["gt_theta"] = s.gt->theta;
        rec["position_error"] = *s.position_error;
        rec["heading_error"] = *s.heading_error;
      }
      series.push_back(std::move(rec));
    }
    a["series"] = std::move(series);
    algorithms.push_back(std::move(a));
  }
  doc["algorithms"] = std::move(algorithms);
  return doc.dump(2) + "\n";
}

}  // namespace uwbrp
