#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwbrp/estimator.hpp"
#include "uwbrp/simulator.hpp"

namespace uwbrp {

enum class ObjectiveKind { Unweighted, Weighted };
enum class InitKind { Origin, Truth, StageResult };

std::string to_string(ObjectiveKind k);
std::string to_string(InitKind k);

/// One report row: the same objective solved from two different initial
/// guesses, compared trial by trial.
struct InitComparison {
  ObjectiveKind objective = ObjectiveKind::Unweighted;
  InitKind init_a = InitKind::Origin;
  InitKind init_b = InitKind::Truth;
};

// The three stock rows: unweighted origin-vs-truth, weighted
// origin-vs-truth, weighted stage1-result-vs-truth.
std::vector<InitComparison> default_init_comparisons();

struct ComparisonRow {
  InitComparison comparison{};
  double mdpp_m = 0.0;     // mean distance between the two position estimates
  double mdpah_rad = 0.0;  // mean |wrapped heading difference|
  long long nonconverged_a = 0;
  long long nonconverged_b = 0;
};

struct MonteCarloOptions {
  int trials = 10000;
  std::uint64_t seed = 0;
  int jobs = 1;
  AntennaLayout layout{};
  WeightParams weight_params{};
  SolverConfig solver{};
};

struct MonteCarloReport {
  MonteCarloOptions options{};
  double gaussian_sigma = 0.0;
  std::vector<ComparisonRow> rows;
};

// Seeded initialization-sensitivity study: per trial, sample a ground
// truth pose, synthesize one noisy range snapshot, solve each requested
// (objective, x0) pair, and average the position/heading differences.
// Trial t always consumes Rng::stream(seed, t) and results are reduced in
// trial order, so any `jobs` count yields bit-identical reports.
MonteCarloReport run_monte_carlo(const std::vector<InitComparison>& comparisons,
                                 const NoiseModel& noise, const MonteCarloOptions& options);

// Plain-text table of the rows (MDPP in meters, MDPAH in degrees).
std::string format_comparison_table(const MonteCarloReport& report);

// JSON document with the options echo and one object per row.
std::string comparison_report_json(const MonteCarloReport& report);

}  // namespace uwbrp
