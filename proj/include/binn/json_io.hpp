#pragma once

#include <filesystem>

#include <json.hpp>

#include "binn/core.hpp"
#include "binn/model.hpp"

namespace binn {

using Json = nlohmann::ordered_json;

/// ModelConfig <-> JSON, one key per field. Unknown keys are rejected.
[[nodiscard]] Json config_to_json(const ModelConfig& config);
[[nodiscard]] ModelConfig config_from_json(const Json& j);
[[nodiscard]] ModelConfig load_config(const std::filesystem::path& path);

[[nodiscard]] Json model_to_json(const BinnModel& model);
[[nodiscard]] BinnModel model_from_json(const Json& j);

[[nodiscard]] Json read_json(const std::filesystem::path& path);
void write_json(const Json& j, const std::filesystem::path& path);

}  // namespace binn
