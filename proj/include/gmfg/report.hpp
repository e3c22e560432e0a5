#pragma once

#include <json.hpp>

#include "gmfg/analysis.hpp"
#include "gmfg/assumptions.hpp"
#include "gmfg/simulate.hpp"
#include "gmfg/verify.hpp"

namespace gmfg {

nlohmann::json to_json(const AssumptionReport& report);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const CriticalNodeReport& report, std::size_t grid_size);
nlohmann::json to_json(const CompareMetrics& metrics, const SimResult& result);

} // namespace gmfg
