#pragma once

#include "ravopt/ravine/diagnostics.hpp"

#include <json.hpp>

namespace ravopt::ravine {

void to_json(nlohmann::json& j, const DiagnosticsReport& rep);
void from_json(const nlohmann::json& j, DiagnosticsReport& rep);

}  // namespace ravopt::ravine
