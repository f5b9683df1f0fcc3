#include "uwbrp/config_io.hpp"

#include <fstream>

#include "uwbrp/errors.hpp"

namespace uwbrp {

nlohmann::json estimator_config_to_json(const EstimatorConfig& config) {
  return {
      {"variant", to_string(config.variant)},
      {"sigma_deg", rad2deg(config.weight_params.sigma)},
      {"rho_deg", rad2deg(config.weight_params.rho)},
      {"window_W", config.window},
      {"solver",
       {{"max_iterations", config.solver.max_iterations},
        {"gradient_tolerance", config.solver.gradient_tolerance},
        {"step_tolerance", config.solver.step_tolerance},
        {"initial_trust_radius", config.solver.initial_trust_radius}}},
  };
}

EstimatorConfig estimator_config_from_json(const nlohmann::json& doc) {
  EstimatorConfig config;
  if (doc.contains("variant")) {
    config.variant = variant_from_string(doc["variant"].get<std::string>());
  }
  double sigma_deg = rad2deg(config.weight_params.sigma);
  double rho_deg = rad2deg(config.weight_params.rho);
  if (doc.contains("sigma_deg")) {
    sigma_deg = doc["sigma_deg"].get<double>();
  }
  if (doc.contains("rho_deg")) {
    rho_deg = doc["rho_deg"].get<double>();
  }
  config.weight_params = WeightParams(deg2rad(sigma_deg), deg2rad(rho_deg));
  if (doc.contains("window_W")) {
    config.window = doc["window_W"].get<int>();
    if (config.window < 1) {
      throw ParameterError("window_W must be >= 1");
    }
  }
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    SolverConfig d;  // defaults for absent keys
    config.solver = SolverConfig(
        s.value("max_iterations", d.max_iterations),
        s.value("gradient_tolerance", d.gradient_tolerance),
        s.value("step_tolerance", d.step_tolerance),
        s.value("initial_trust_radius", d.initial_trust_radius));
  }
  return config;
}

EstimatorConfig load_estimator_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config: " + path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config JSON: ") + e.what(), 0);
  }
  return estimator_config_from_json(doc);
}

}  // namespace uwbrp
