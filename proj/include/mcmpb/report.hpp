// Report serialization: lossless JSON documents for fit reports and an
// aligned human-readable table.
#pragma once

#include <string>

#include "mcmpb/fit.hpp"

namespace mcmpb {

// JSON document for a fit report; numbers round-trip exactly (shortest
// faithful decimal representation, always at least 6 significant digits).
std::string report_to_json(const fit_report& report, int indent = 2);
fit_report report_from_json(const std::string& text);

// Human-readable summary: parameter block plus the observed/expected table.
std::string report_to_text(const fit_report& report, const std::string& dataset_name = "");

}  // namespace mcmpb
