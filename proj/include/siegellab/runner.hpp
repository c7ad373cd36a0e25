#pragma once

#include <string>

#include <json.hpp>

#include "siegellab/contfrac.hpp"

namespace siegellab::runner {

inline constexpr const char* kVersion = "0.1.0";

struct RunResult {
    std::string payload;
    std::string content_type;
    std::string envelope_json;
};

/// Parsed alpha specification: exact entries where available plus a double
/// approximation for the dynamical modules.
struct AlphaSpec {
    contfrac::CFExpansion cf;
    double value = 0.0;
    std::string label;
};

AlphaSpec parse_alpha(const nlohmann::json& spec);

/// Dispatches a subcommand against its JSON config. Throws
/// std::invalid_argument for config/schema problems and domain exceptions
/// from the modules otherwise.
RunResult run(const std::string& subcommand, const nlohmann::json& config);

}  // namespace siegellab::runner
