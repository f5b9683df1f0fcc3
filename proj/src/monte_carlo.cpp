#include "uwbrp/monte_carlo.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "uwbrp/errors.hpp"

namespace uwbrp {

namespace {

// Solve cache slots per trial: 2 objectives x 3 initializations.
int slot(ObjectiveKind obj, InitKind init) {
  return static_cast<int>(obj) * 3 + static_cast<int>(init);
}

struct TrialSolver {
  const RangeMatrix& zhat;
  const AntennaLayout& layout;
  const Pose2D& truth;
  const MonteCarloOptions& options;
  std::array<std::optional<EstimateResult>, 6> memo;

  const EstimateResult& get(ObjectiveKind obj, InitKind init) {
    auto& entry = memo[slot(obj, init)];
    if (!entry) {
      Pose2D x0;
      switch (init) {
        case InitKind::Origin:
          x0 = Pose2D{};
          break;
        case InitKind::Truth:
          x0 = truth;
          break;
        case InitKind::StageResult:
          x0 = get(ObjectiveKind::Unweighted, InitKind::Origin).pose;
          break;
      }
      EstimatorConfig config;
      config.variant = obj == ObjectiveKind::Weighted ? Variant::Weighted : Variant::Unweighted;
      config.weight_params = options.weight_params;
      config.solver = options.solver;
      entry = solve(zhat, layout, x0, config);
    }
    return *entry;
  }
};

}  // namespace

std::string to_string(ObjectiveKind k) {
  return k == ObjectiveKind::Weighted ? "weighted" : "unweighted";
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::Origin:
      return "origin";
    case InitKind::Truth:
      return "truth";
    case InitKind::StageResult:
      return "stage1";
  }
  return "unknown";
}

std::vector<InitComparison> default_init_comparisons() {
  return {
      {ObjectiveKind::Unweighted, InitKind::Origin, InitKind::Truth},
      {ObjectiveKind::Weighted, InitKind::Origin, InitKind::Truth},
      {ObjectiveKind::Weighted, InitKind::StageResult, InitKind::Truth},
  };
}

MonteCarloReport run_monte_carlo(const std::vector<InitComparison>& comparisons,
                                 const NoiseModel& noise, const MonteCarloOptions& options) {
  if (options.trials < 1) {
    throw ParameterError("monte carlo needs trials >= 1");
  }
  if (comparisons.empty()) {
    throw ParameterError("monte carlo needs at least one comparison");
  }
  const int trials = options.trials;
  const int rows = static_cast<int>(comparisons.size());
  const int jobs = std::max(1, options.jobs);

  // Per-trial outputs, written by disjoint ranges and reduced in trial
  // order afterwards.
  std::vector<double> dp(static_cast<std::size_t>(rows) * trials);
  std::vector<double> dh(static_cast<std::size_t>(rows) * trials);
  std::vector<unsigned char> nca(static_cast<std::size_t>(rows) * trials);
  std::vector<unsigned char> ncb(static_cast<std::size_t>(rows) * trials);

  auto worker = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(t));
      const Pose2D truth = sample_uniform_pose(rng);
      const RangeMatrix zhat = synth_ranges(truth, options.layout, noise, rng);

      TrialSolver solver{zhat, options.layout, truth, options, {}};
      for (int r = 0; r < rows; ++r) {
        const EstimateResult& a = solver.get(comparisons[r].objective, comparisons[r].init_a);
        const EstimateResult& b = solver.get(comparisons[r].objective, comparisons[r].init_b);
        const std::size_t idx = static_cast<std::size_t>(r) * trials + t;
        dp[idx] = (a.pose.position() - b.pose.position()).norm();
        dh[idx] = std::abs(wrap_pi(a.pose.theta - b.pose.theta));
        nca[idx] = a.converged ? 0 : 1;
        ncb[idx] = b.converged ? 0 : 1;
      }
    }
  };

  if (jobs == 1) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    const int chunk = (trials + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const int begin = w * chunk;
      const int end = std::min(trials, begin + chunk);
      if (begin >= end) {
        break;
      }
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) {
      th.join();
    }
  }

  MonteCarloReport report;
  report.options = options;
  report.gaussian_sigma = noise.gaussian_sigma;
  report.rows.reserve(rows);
  for (int r = 0; r < rows; ++r) {
    ComparisonRow row;
    row.comparison = comparisons[r];
    double sum_p = 0.0;
    double sum_h = 0.0;
    for (int t = 0; t < trials; ++t) {
      const std::size_t idx = static_cast<std::size_t>(r) * trials + t;
      sum_p += dp[idx];
      sum_h += dh[idx];
      row.nonconverged_a += nca[idx];
      row.nonconverged_b += ncb[idx];
    }
    row.mdpp_m = sum_p / trials;
    row.mdpah_rad = sum_h / trials;
    report.rows.push_back(row);
  }
  return report;
}

std::string format_comparison_table(const MonteCarloReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s | %-18s | %10s | %12s | %s\n", "Objective",
                "Compared x0", "MDPP [m]", "MDPAH [deg]", "Nonconv a/b");
  out << line;
  out << std::string(72, '-') << "\n";
  for (const auto& row : report.rows) {
    const std::string pair =
        to_string(row.comparison.init_a) + " vs " + to_string(row.comparison.init_b);
    std::snprintf(line, sizeof(line), "%-12s | %-18s | %10.4f | %12.4f | %lld / %lld\n",
                  to_string(row.comparison.objective).c_str(), pair.c_str(), row.mdpp_m,
                  rad2deg(row.mdpah_rad), row.nonconverged_a, row.nonconverged_b);
    out << line;
  }
  return out.str();
}

std::string comparison_report_json(const MonteCarloReport& report) {
  nlohmann::json doc;
  doc["trials"] = report.options.trials;
  doc["seed"] = report.options.seed;
  doc["jobs"] = report.options.jobs;
  doc["gaussian_sigma"] = report.gaussian_sigma;
  doc["weight_params"] = {{"sigma_deg", rad2deg(report.options.weight_params.sigma)},
                          {"rho_deg", rad2deg(report.options.weight_params.rho)}};
  doc["solver"] = {{"max_iterations", report.options.solver.max_iterations},
                   {"gradient_tolerance", report.options.solver.gradient_tolerance},
                   {"step_tolerance", report.options.solver.step_tolerance},
                   {"initial_trust_radius", report.options.solver.initial_trust_radius}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"objective", to_string(row.comparison.objective)},
                    {"x0_a", to_string(row.comparison.init_a)},
                    {"x0_b", to_string(row.comparison.init_b)},
                    {"mdpp_m", row.mdpp_m},
                    {"mdpah_deg", rad2deg(row.mdpah_rad)},
                    {"nonconverged_a", row.nonconverged_a},
                    {"nonconverged_b", row.nonconverged_b}});
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

}  // namespace uwbrp
