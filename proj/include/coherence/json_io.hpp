#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>

#include "coherence/channels.hpp"
#include "coherence/states.hpp"

namespace coherence {

// State schema: {"dim": d, "re": [[...]], "im": [[...]]}, both arrays
// d x d row-major. Channel schema: {"dim": d, "operators": [state-style
// objects]}. Loaders validate the full DensityMatrix / dimension
// invariants and throw std::invalid_argument with the offending field.

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const nlohmann::json& j);

DensityMatrix load_state_file(const std::filesystem::path& path);
KrausChannel load_channel_file(const std::filesystem::path& path);

}  // namespace coherence
