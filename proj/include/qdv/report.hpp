#pragma once

// Verification report records and their renderings (table, JSON lines, CSV,
// markdown). Exact values are printed as integers or rationals; floating
// values with 12 significant digits.

#include <cstdint>
#include <string>
#include <vector>

namespace qdv {

struct DesignReport {
    std::string claim;
    std::string method;
    std::string params;
    std::string value;
    std::string expected;
    bool pass = false;
    double runtime_ms = 0.0;
    std::uint64_t seed = 0;
};

std::string format_float(double v);  // 12 significant digits

std::string render_table(const std::vector<DesignReport>& reports, bool omit_runtime);
std::string render_json_lines(const std::vector<DesignReport>& reports, bool omit_runtime);
std::string render_csv(const std::vector<DesignReport>& reports, bool omit_runtime);
std::string render_markdown(const std::vector<DesignReport>& reports, bool omit_runtime);

std::string render_reports(const std::vector<DesignReport>& reports, const std::string& format,
                           bool omit_runtime);

}  // namespace qdv
