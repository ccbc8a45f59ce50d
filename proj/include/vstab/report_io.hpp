#pragma once

#include "vstab/vandermonde.hpp"

#include <cstdint>
#include <string>

// Report emission and parsing. Numbers carry 17 significant digits so the
// emitted text round-trips to the exact doubles, and emission order is
// fixed, making reports byte-identical for identical (input, config, seed).

namespace vstab {

struct ConfigEcho {
    std::string input;
    std::string degree_arg = "auto";
    int degree = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1024;
    std::uint64_t max_nu = 5000;
    double rel_slack = 1e-9;
    double kron_tol = 1e-8;
    std::string format = "json";

    bool operator==(const ConfigEcho&) const = default;
};

std::string format_double17(double x);

std::string emit_report_json(const ConfigEcho& config, const StabilityReport& report);
std::string emit_report_table(const ConfigEcho& config, const StabilityReport& report);

struct ParsedReport {
    ConfigEcho config;
    StabilityReport report;

    bool operator==(const ParsedReport&) const = default;
};

// Inverse of emit_report_json. Throws ValidationError on malformed input.
ParsedReport parse_report_json(const std::string& text);

} // namespace vstab
