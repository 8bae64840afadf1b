#pragma once

#include <string>

#include "tradenet/calibration.hpp"
#include "tradenet/dataio.hpp"
#include "tradenet/domain.hpp"

namespace tradenet::config {

inline constexpr int kSchemaVersion = 1;

/// Parameter file: {"schema_version": 1, "params": {...}}. Missing keys
/// keep their defaults in `base`; unknown keys are an error.
GlobalParams params_from_json(const std::string& text, const GlobalParams& base = {});
std::string params_to_json(const GlobalParams& params);
GlobalParams load_params(const std::string& path);

calibration::GAConfig ga_config_from_json(const std::string& text);
std::string ga_config_to_json(const calibration::GAConfig& config);
calibration::GAConfig load_ga_config(const std::string& path);

dataio::SyntheticConfig synthetic_config_from_json(const std::string& text);
std::string synthetic_config_to_json(const dataio::SyntheticConfig& config);
dataio::SyntheticConfig load_synthetic_config(const std::string& path);

std::string planted_truth_to_json(const dataio::PlantedTruth& truth);

/// Best-fit file: raw and normalized genome plus fitness. The "params" key
/// holds the raw genome, so the file loads with load_params.
std::string best_params_to_json(const calibration::GAResult& result);

}  // namespace tradenet::config
