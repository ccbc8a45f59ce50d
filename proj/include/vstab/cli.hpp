#pragma once

#include "vstab/geometry.hpp"
#include "vstab/report_io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

// The user-facing surface: node-set ingestion, report emission, the seeded
// randomized certification suite, and the slow exact-oracle comparisons.
// Exit codes: 0 all certificates pass, 1 certificate failure, 2 usage or
// input error.

namespace vstab::cli {

constexpr int kExitPass = 0;
constexpr int kExitCertificateFailure = 1;
constexpr int kExitInputError = 2;

// Document format: {"n": <int>, "points": [[x1, ..., xn], ...]}.
NodeSet parse_nodeset(const std::string& json_text);
NodeSet parse_nodeset_file(const std::string& path);

struct AnalyzeConfig {
    std::string input_path;
    std::string degree = "auto"; // "auto" = s - 1, otherwise an integer
    std::uint64_t seed = 0;
    std::uint64_t budget = 1024;
    std::string format = "json"; // json | table
    std::string output;          // empty = stdout
    std::uint64_t max_nu = 5000;
};

int run_analyze(const AnalyzeConfig& config, std::ostream& out, std::ostream& err);

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::uint64_t count = 100;
    int s_min = 2;
    int s_max = 5;
    int n_min = 1;
    int n_max = 3;
    std::string degree = "auto";
    std::uint64_t budget = 1024;
    std::string format = "json";
    std::string output;
    std::uint64_t max_nu = 5000;
};

int run_suite(const SuiteConfig& config, std::ostream& out, std::ostream& err);

struct OracleCheckConfig {
    std::uint64_t seed = 0;
    std::uint64_t univariate_instances = 200;
    std::uint64_t rank_instances = 200;
    std::uint64_t planar_instances = 100;
    std::uint64_t grid_resolution = 1000000;
};

int run_oracle_check(const OracleCheckConfig& config, std::ostream& out);

} // namespace vstab::cli
