#pragma once

// The full verification suite: every numbered acceptance check, each
// producing report records and a pass flag. The CLI and the acceptance test
// binary both run through this entry point; determinism (criterion 14) is
// checked by the callers re-running the suite under a different thread count
// and cache state and comparing the serialized reports.

#include <cstdint>
#include <string>
#include <vector>

#include "qdv/report.hpp"

namespace qdv {

struct RunConfig {
    int threads = 0;             // 0 = leave the OpenMP default
    std::uint64_t seed = 12345;
    std::string cache_dir;       // empty = no caching
    double mat_tol = 1e-9;       // matrix comparisons
    double pot_tol = 1e-6;       // potential rounding
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<DesignReport> reports;
};

std::vector<CriterionResult> run_acceptance_suite(const RunConfig& cfg);

bool all_pass(const std::vector<CriterionResult>& results);

// Canonical byte string of every report value (runtime excluded); two runs
// are considered bit-identical iff these strings match.
std::string determinism_fingerprint(const std::vector<CriterionResult>& results);

std::vector<DesignReport> flatten_reports(const std::vector<CriterionResult>& results);

}  // namespace qdv
