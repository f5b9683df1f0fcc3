#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uwbrp/calibration.hpp"
#include "uwbrp/config_io.hpp"
#include "uwbrp/dataset_io.hpp"
#include "uwbrp/errors.hpp"
#include "uwbrp/evaluation.hpp"
#include "uwbrp/log.hpp"
#include "uwbrp/monte_carlo.hpp"
#include "uwbrp/simulator.hpp"

namespace {

using namespace uwbrp;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write: " + path.string());
  }
  out << text;
}

// Every subcommand drops a sidecar with its resolved configuration so runs
// are reproducible from the outputs alone.
void write_meta(const std::filesystem::path& out_path, const nlohmann::json& meta) {
  std::filesystem::path side = out_path;
  side += ".meta.json";
  write_text(side, meta.dump(2) + "\n");
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const IndexError*>(&e)) return "index";
  if (dynamic_cast<const ShapeError*>(&e)) return "shape";
  if (dynamic_cast<const ParameterError*>(&e)) return "parameter";
  if (dynamic_cast<const DegenerateGeometryError*>(&e)) return "degenerate_geometry";
  if (dynamic_cast<const NoDataError*>(&e)) return "no_data";
  if (dynamic_cast<const CoverageError*>(&e)) return "coverage";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  return "internal";
}

NoiseModel noise_from_name(const std::string& name) {
  if (name == "none") return NoiseModel::none();
  if (name == "table1") return NoiseModel::gaussian_only(0.2);
  if (name == "hardware") return NoiseModel::hardware_like();
  throw ParameterError("unknown noise preset \"" + name + "\" (expected none|table1|hardware)");
}

struct SimulateArgs {
  std::string traj = "box";
  std::string noise = "hardware";
  std::uint64_t seed = 0;
  double rate_hz = 50.0;
  double duration = 0.0;
  double revolutions = 0.0;
  double distance = 3.0;
  double radius = 3.0;
  double width = 8.0;
  double height = 6.0;
  double speed = 1.0;
  std::string out = "dataset.csv";
};

int cmd_simulate(const SimulateArgs& args) {
  const AntennaLayout layout;
  const NoiseModel noise = noise_from_name(args.noise);
  Rng rng(args.seed);

  std::vector<DatasetRecord> records;
  if (args.traj == "calib-sweep") {
    records = dataset_from_calibration_records(
        generate_calibration_sweep(args.distance, noise, rng, layout));
  } else {
    TrajectorySpec spec;
    spec.rate_hz = args.rate_hz;
    spec.speed = args.speed;
    if (args.traj == "static") {
      spec.kind = TrajectorySpec::Kind::StaticPose;
      spec.start = Pose2D(args.distance, 0.0, 0.0);
      spec.duration = args.duration > 0.0 ? args.duration : 10.0;
    } else if (args.traj == "rot-ccw" || args.traj == "rot-cw") {
      spec.kind = TrajectorySpec::Kind::RotateInPlace;
      spec.start = Pose2D(args.distance, 0.0, 0.0);
      spec.angular_speed = args.traj == "rot-cw" ? -deg2rad(60.0) : deg2rad(60.0);
      spec.revolutions = args.revolutions > 0.0 ? args.revolutions : 0.0;
      spec.duration = args.duration;
      if (spec.revolutions == 0.0 && spec.duration == 0.0) {
        spec.revolutions = 5.0;
      }
    } else if (args.traj == "circle-ccw" || args.traj == "circle-cw") {
      spec.kind = TrajectorySpec::Kind::Circle;
      spec.radius = args.radius;
      spec.clockwise = args.traj == "circle-cw";
      spec.duration = args.duration;
    } else if (args.traj == "box") {
      spec.kind = TrajectorySpec::Kind::Box;
      spec.width = args.width;
      spec.height = args.height;
    } else if (args.traj == "kidney-bean") {
      spec.kind = TrajectorySpec::Kind::Waypoints;
      spec.waypoints = kidney_bean_waypoints();
    } else {
      throw ParameterError("unknown trajectory \"" + args.traj +
                           "\" (static|rot-cw|rot-ccw|circle-cw|circle-ccw|box|kidney-bean|"
                           "calib-sweep)");
    }

    for (const auto& tp : generate_trajectory(spec)) {
      DatasetRecord rec;
      rec.t = tp.t;
      rec.gt_a = Pose2D{};
      rec.gt_b = tp.pose;
      rec.ranges = synth_ranges(tp.pose, layout, noise, rng);
      rec.ranges.set_timestamp(tp.t);
      records.push_back(std::move(rec));
    }
  }

  write_dataset_csv(args.out, records);
  write_meta(args.out, {{"command", "simulate"},
                        {"traj", args.traj},
                        {"noise", args.noise},
                        {"seed", args.seed},
                        {"rate_hz", args.rate_hz},
                        {"duration", args.duration},
                        {"revolutions", args.revolutions},
                        {"distance", args.distance},
                        {"radius", args.radius},
                        {"width", args.width},
                        {"height", args.height},
                        {"speed", args.speed},
                        {"records", records.size()},
                        {"out", args.out}});
  log::info("wrote " + std::to_string(records.size()) + " records to " + args.out);
  return 0;
}

struct CalibrateArgs {
  std::string dataset;
  std::string out = "calibration.json";
  std::string method = "mask";
  std::string aggregate = "mean";
  double mask_threshold = 1.0;
  double trim_fraction = 0.2;
  int min_samples = 100;
  double sigma_deg = 30.0;
  double rho_deg = 90.0;
};

int cmd_calibrate(const CalibrateArgs& args) {
  const AntennaLayout layout;
  const auto records = calibration_records_from_dataset(read_dataset_csv(args.dataset));

  BiasEstimationOptions options;
  if (args.method == "mask") {
    options.method = BiasEstimationOptions::Method::WeightMask;
  } else if (args.method == "trimmed") {
    options.method = BiasEstimationOptions::Method::TrimmedMean;
  } else {
    throw ParameterError("unknown method \"" + args.method + "\" (mask|trimmed)");
  }
  if (args.aggregate == "mean") {
    options.aggregate = BiasEstimationOptions::Aggregate::Mean;
  } else if (args.aggregate == "median") {
    options.aggregate = BiasEstimationOptions::Aggregate::Median;
  } else {
    throw ParameterError("unknown aggregate \"" + args.aggregate + "\" (mean|median)");
  }
  options.mask_threshold = args.mask_threshold;
  options.trim_fraction = args.trim_fraction;
  options.min_samples = args.min_samples;

  const WeightParams mask_params(deg2rad(args.sigma_deg), deg2rad(args.rho_deg));
  const CalibrationTable table = estimate_bias(records, layout, mask_params, options);
  table.save(args.out);
  write_meta(args.out, {{"command", "calibrate"},
                        {"dataset", args.dataset},
                        {"method", args.method},
                        {"aggregate", args.aggregate},
                        {"mask_threshold", args.mask_threshold},
                        {"trim_fraction", args.trim_fraction},
                        {"min_samples", args.min_samples},
                        {"sigma_deg", args.sigma_deg},
                        {"rho_deg", args.rho_deg},
                        {"records", records.size()},
                        {"out", args.out}});
  log::info("wrote calibration table to " + args.out);
  return 0;
}

// Shared estimator-config assembly: config file first, explicit flags win.
struct EstimatorFlags {
  std::string config_path;
  std::string variant;
  double sigma_deg = 0.0;
  double rho_deg = 0.0;
  int window = 0;
  bool has_variant = false;
  bool has_sigma = false;
  bool has_rho = false;
  bool has_window = false;
};

EstimatorConfig resolve_config(const EstimatorFlags& flags) {
  EstimatorConfig config;
  if (!flags.config_path.empty()) {
    config = load_estimator_config(flags.config_path);
  }
  if (flags.has_variant) {
    config.variant = variant_from_string(flags.variant);
  }
  double sigma = rad2deg(config.weight_params.sigma);
  double rho = rad2deg(config.weight_params.rho);
  if (flags.has_sigma) {
    sigma = flags.sigma_deg;
  }
  if (flags.has_rho) {
    rho = flags.rho_deg;
  }
  config.weight_params = WeightParams(deg2rad(sigma), deg2rad(rho));
  if (flags.has_window) {
    if (flags.window < 1) {
      throw ParameterError("--window must be >= 1");
    }
    config.window = flags.window;
  }
  return config;
}

CalibrationTable load_table_or_zero(const std::string& path, int antenna_count) {
  if (path.empty()) {
    log::warn("no calibration table given; using zero biases");
    return CalibrationTable(antenna_count);
  }
  return CalibrationTable::load(path);
}

struct EstimateArgs {
  std::string dataset;
  std::string table;
  std::string out = "poses.csv";
  double rate_hz = 10.0;
  EstimatorFlags flags;
};

int cmd_estimate(const EstimateArgs& args) {
  const auto dataset = read_dataset_csv(args.dataset);
  if (dataset.empty()) {
    throw NoDataError("dataset is empty: " + args.dataset);
  }
  const EstimatorConfig config = resolve_config(args.flags);
  const CalibrationTable table =
      load_table_or_zero(args.table, dataset.front().ranges.antenna_count());

  const TrialReport report = replay(dataset, {config}, table, args.rate_hz);
  const auto& samples = report.runs.front().samples;

  std::string csv = "t,x,y,theta,converged,iterations,objective\n";
  for (const auto& s : samples) {
    csv += format_double(s.t) + ',' + format_double(s.estimate.x) + ',' +
           format_double(s.estimate.y) + ',' + format_double(s.estimate.theta) + ',' +
           (s.converged ? "1" : "0") + ',' + std::to_string(s.iterations) + ',' +
           format_double(s.objective) + '\n';
  }
  write_text(args.out, csv);
  write_meta(args.out, {{"command", "estimate"},
                        {"dataset", args.dataset},
                        {"table", args.table},
                        {"estimate_rate_hz", args.rate_hz},
                        {"estimates", samples.size()},
                        {"config", estimator_config_to_json(config)},
                        {"out", args.out}});
  log::info("wrote " + std::to_string(samples.size()) + " estimates to " + args.out);
  return 0;
}

struct EvalArgs {
  std::string dataset;
  std::string table;
  std::string out = "report.json";
  std::string variants = "raw,shift,movavg,unweighted,weighted";
  double rate_hz = 10.0;
  EstimatorFlags flags;
};

int cmd_eval(const EvalArgs& args) {
  const auto dataset = read_dataset_csv(args.dataset);
  if (dataset.empty()) {
    throw NoDataError("dataset is empty: " + args.dataset);
  }
  const EstimatorConfig base = resolve_config(args.flags);
  const CalibrationTable table =
      load_table_or_zero(args.table, dataset.front().ranges.antenna_count());

  std::vector<EstimatorConfig> configs;
  std::string item;
  std::istringstream list(args.variants);
  while (std::getline(list, item, ',')) {
    if (item.empty()) {
      continue;
    }
    EstimatorConfig c = base;
    c.variant = variant_from_string(item);
    configs.push_back(c);
  }
  if (configs.empty()) {
    throw ParameterError("--variants produced an empty list");
  }

  const TrialReport report = replay(dataset, configs, table, args.rate_hz);
  std::string text;
  if (report.has_ground_truth) {
    const auto summary = summarize(report);
    text = format_summary_table(summary);
    write_text(args.out, report_json(report, summary));
  } else {
    log::warn("summary unavailable: dataset has no ground truth");
    write_text(args.out, report_json(report, {}));
    text = "(no ground truth; summary unavailable)\n";
  }
  write_meta(args.out, {{"command", "eval"},
                        {"dataset", args.dataset},
                        {"table", args.table},
                        {"variants", args.variants},
                        {"estimate_rate_hz", args.rate_hz},
                        {"config", estimator_config_to_json(base)},
                        {"out", args.out}});
  std::cout << text;
  return 0;
}

struct Table1Args {
  int trials = 10000;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out = "table1.json";
  EstimatorFlags flags;
};

int cmd_table1(const Table1Args& args) {
  const EstimatorConfig base = resolve_config(args.flags);
  MonteCarloOptions options;
  options.trials = args.trials;
  options.seed = args.seed;
  options.jobs = args.jobs;
  options.weight_params = base.weight_params;
  options.solver = base.solver;

  const NoiseModel noise = NoiseModel::gaussian_only(0.2);
  const MonteCarloReport report =
      run_monte_carlo(default_init_comparisons(), noise, options);
  write_text(args.out, comparison_report_json(report));
  std::cout << format_comparison_table(report);
  write_meta(args.out, {{"command", "table1"},
                        {"trials", args.trials},
                        {"seed", args.seed},
                        {"jobs", args.jobs},
                        {"gaussian_sigma", noise.gaussian_sigma},
                        {"config", estimator_config_to_json(base)},
                        {"out", args.out}});
  return 0;
}

void add_estimator_flags(CLI::App* cmd, EstimatorFlags& flags) {
  cmd->add_option("--config", flags.config_path, "estimator config JSON (flags override it)");
  auto* v = cmd->add_option("--variant", flags.variant, "raw|shift|movavg|unweighted|weighted");
  auto* s = cmd->add_option("--sigma-deg", flags.sigma_deg, "weight stop-band end angle");
  auto* r = cmd->add_option("--rho-deg", flags.rho_deg, "weight pass-band begin angle");
  auto* w = cmd->add_option("--window", flags.window, "moving-average window W");
  cmd->parse_complete_callback([&flags, v, s, r, w]() {
    flags.has_variant = v->count() > 0;
    flags.has_sigma = s->count() > 0;
    flags.has_rho = r->count() > 0;
    flags.has_window = w->count() > 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-tag UWB relative 2D pose estimation toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic dataset CSV");
  simulate->add_option("--traj", sim.traj,
                       "static|rot-cw|rot-ccw|circle-cw|circle-ccw|box|kidney-bean|calib-sweep");
  simulate->add_option("--noise", sim.noise, "none|table1|hardware");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--rate-hz", sim.rate_hz, "sample rate");
  simulate->add_option("--duration", sim.duration, "duration [s] where applicable");
  simulate->add_option("--revolutions", sim.revolutions, "rotations for rot-*");
  simulate->add_option("--distance", sim.distance, "separation for static/rot/calib-sweep");
  simulate->add_option("--radius", sim.radius, "circle radius");
  simulate->add_option("--width", sim.width, "box width");
  simulate->add_option("--height", sim.height, "box height");
  simulate->add_option("--speed", sim.speed, "path speed [m/s]");
  simulate->add_option("--out", sim.out, "output CSV path");

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "estimate per-pair biases from a sweep");
  calibrate->add_option("--dataset", cal.dataset, "input CSV with ground truth")->required();
  calibrate->add_option("--out", cal.out, "output calibration JSON");
  calibrate->add_option("--method", cal.method, "mask|trimmed");
  calibrate->add_option("--aggregate", cal.aggregate, "mean|median");
  calibrate->add_option("--mask-threshold", cal.mask_threshold, "minimum pair weight kept");
  calibrate->add_option("--trim-fraction", cal.trim_fraction, "fraction trimmed (trimmed method)");
  calibrate->add_option("--min-samples", cal.min_samples, "coverage guard per pair");
  calibrate->add_option("--sigma-deg", cal.sigma_deg, "mask stop-band end angle");
  calibrate->add_option("--rho-deg", cal.rho_deg, "mask pass-band begin angle");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "run one estimator over a dataset");
  estimate->add_option("--dataset", est.dataset, "input CSV")->required();
  estimate->add_option("--table", est.table, "calibration JSON (zero biases if omitted)");
  estimate->add_option("--rate-hz", est.rate_hz, "estimate rate");
  estimate->add_option("--out", est.out, "output pose CSV");
  add_estimator_flags(estimate, est.flags);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "compare estimator variants against ground truth");
  eval->add_option("--dataset", ev.dataset, "input CSV")->required();
  eval->add_option("--table", ev.table, "calibration JSON (zero biases if omitted)");
  eval->add_option("--variants", ev.variants, "comma list of variants");
  eval->add_option("--rate-hz", ev.rate_hz, "estimate rate");
  eval->add_option("--out", ev.out, "output report JSON");
  add_estimator_flags(eval, ev.flags);

  Table1Args t1;
  auto* table1 = app.add_subcommand("table1", "initialization-sensitivity Monte Carlo study");
  table1->add_option("--trials", t1.trials, "number of trials");
  table1->add_option("--seed", t1.seed, "RNG seed");
  table1->add_option("--jobs", t1.jobs, "worker threads");
  table1->add_option("--out", t1.out, "output report JSON");
  add_estimator_flags(table1, t1.flags);

  try {
    app.parse(argc, argv);
    if (*simulate) return cmd_simulate(sim);
    if (*calibrate) return cmd_calibrate(cal);
    if (*estimate) return cmd_estimate(est);
    if (*eval) return cmd_eval(ev);
    if (*table1) return cmd_table1(t1);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", {{"type", error_kind(e)}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
