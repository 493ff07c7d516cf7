#include "qdv/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qdv {

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string render_table(const std::vector<DesignReport>& reports, bool omit_runtime) {
    std::size_t wc = 5, wv = 5, we = 8, wm = 6;
    for (const auto& r : reports) {
        wc = std::max(wc, r.claim.size());
        wv = std::max(wv, r.value.size());
        we = std::max(we, r.expected.size());
        wm = std::max(wm, r.method.size());
    }
    std::ostringstream out;
    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    out << pad("claim", wc) << "  " << pad("expected", we) << "  " << pad("value", wv) << "  "
        << pad("method", wm) << "  pass\n";
    for (const auto& r : reports) {
        out << pad(r.claim, wc) << "  " << pad(r.expected, we) << "  " << pad(r.value, wv)
            << "  " << pad(r.method, wm) << "  " << (r.pass ? "yes" : "NO");
        if (!omit_runtime) out << "  (" << format_float(r.runtime_ms) << " ms)";
        out << "\n";
    }
    return out.str();
}

std::string render_json_lines(const std::vector<DesignReport>& reports, bool omit_runtime) {
    std::ostringstream out;
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["claim"] = r.claim;
        j["method"] = r.method;
        j["params"] = r.params;
        j["value"] = r.value;
        j["expected"] = r.expected;
        j["pass"] = r.pass;
        if (!omit_runtime) j["runtime_ms"] = r.runtime_ms;
        j["seed"] = r.seed;
        out << j.dump() << "\n";
    }
    return out.str();
}

static std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string render_csv(const std::vector<DesignReport>& reports, bool omit_runtime) {
    std::ostringstream out;
    out << "claim,method,params,value,expected,pass";
    if (!omit_runtime) out << ",runtime_ms";
    out << ",seed\n";
    for (const auto& r : reports) {
        out << csv_escape(r.claim) << ',' << csv_escape(r.method) << ','
            << csv_escape(r.params) << ',' << csv_escape(r.value) << ','
            << csv_escape(r.expected) << ',' << (r.pass ? "true" : "false");
        if (!omit_runtime) out << ',' << format_float(r.runtime_ms);
        out << ',' << r.seed << "\n";
    }
    return out.str();
}

std::string render_markdown(const std::vector<DesignReport>& reports, bool omit_runtime) {
    std::ostringstream out;
    out << "| claim | expected | value | method | pass |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        out << "| " << r.claim << " | " << r.expected << " | " << r.value << " | " << r.method
            << " | " << (r.pass ? "yes" : "**NO**") << " |\n";
    }
    (void)omit_runtime;
    return out.str();
}

std::string render_reports(const std::vector<DesignReport>& reports, const std::string& format,
                           bool omit_runtime) {
    if (format == "table") return render_table(reports, omit_runtime);
    if (format == "json") return render_json_lines(reports, omit_runtime);
    if (format == "csv") return render_csv(reports, omit_runtime);
    if (format == "md") return render_markdown(reports, omit_runtime);
    throw std::invalid_argument("unknown report format: " + format);
}

}  // namespace qdv
