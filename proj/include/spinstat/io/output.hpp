#pragma once

#include <string>

#include <json.hpp>

#include "spinstat/currents.hpp"
#include "spinstat/io/config.hpp"
#include "spinstat/thermo.hpp"

namespace spinstat {

// Full config echo (every effective value, including resolved kernel backend
// and worker count): feeding it back reproduces the run bit-identically.
nlohmann::json config_echo(const RunConfig& cfg);

nlohmann::json state_json(const FluidState& s);
nlohmann::json bundle_json(const CurrentsBundle& b);
nlohmann::json bundle_errors_json(const CurrentsBundle& b);
nlohmann::json report_json(const IdentityReport& r);

// Write to path via a temp file + rename (atomic on POSIX); empty path or
// "-" writes to stdout.
void write_output(const std::string& path, const std::string& content);

} // namespace spinstat
