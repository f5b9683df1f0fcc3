#pragma once

#include <filesystem>

#include <json.hpp>

#include "uwbrp/estimator.hpp"

namespace uwbrp {

// EstimatorConfig <-> JSON. Angles are degrees on the wire, radians in
// memory. Keys: variant, sigma_deg, rho_deg, window_W, solver{...}.
nlohmann::json estimator_config_to_json(const EstimatorConfig& config);
EstimatorConfig estimator_config_from_json(const nlohmann::json& doc);
EstimatorConfig load_estimator_config(const std::filesystem::path& path);

}  // namespace uwbrp
