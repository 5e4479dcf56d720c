#pragma once

#include <string>

#include <json.hpp>

#include "gsd/compare.hpp"
#include "gsd/gof.hpp"

namespace gsd {

nlohmann::json to_json(const GsdParams& params);
nlohmann::json to_json(const FitResult& fit);
nlohmann::json to_json(const ProbitFitResult& fit);
nlohmann::json to_json(const GofResult& gof);
nlohmann::json to_json(const CompareResult& result);

// Report envelope shared by all subcommands: versioned schema, the settings
// that produced the results, and the per-stimulus payload. Deliberately
// timestamp-free so identical runs serialize identically.
nlohmann::json make_report(const std::string& command,
                           nlohmann::json settings, nlohmann::json results);

std::string method_name(FitMethod method);
std::string verdict_name(CompareVerdict verdict);

}  // namespace gsd
