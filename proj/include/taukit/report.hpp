#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "taukit/common.hpp"

namespace taukit {

// One evaluated case. measured must stay below bound (in the sense recorded
// by verdict); se is the statistical standard error when the case is a Monte
// Carlo estimate, 0 otherwise.
struct ReportRecord {
    std::string suite;
    std::string case_id;
    std::vector<std::pair<std::string, std::string>> inputs; // ordered echo of parameters
    double measured = 0.0;
    double bound = 0.0;
    double se = 0.0;
    Verdict verdict = Verdict::pass;
    double wall_ms = 0.0;
};

// shortest round-trip decimal form; non-finite values use the tokens inf,
// -inf, nan in both JSON (as strings) and CSV
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string json_number(double v) {
    if (std::isfinite(v)) return format_double(v);
    return "\"" + format_double(v) + "\"";
}

struct VerdictCounts {
    int pass = 0, fail = 0, inconclusive = 0, vacuous = 0;
};

inline VerdictCounts count_verdicts(std::span<const ReportRecord> records) {
    VerdictCounts c;
    for (const auto& r : records) {
        switch (r.verdict) {
            case Verdict::pass: ++c.pass; break;
            case Verdict::fail: ++c.fail; break;
            case Verdict::inconclusive: ++c.inconclusive; break;
            case Verdict::vacuous_pass: ++c.vacuous; break;
        }
    }
    return c;
}

inline std::string render_json(std::span<const ReportRecord> records,
                               std::span<const std::pair<std::string, std::string>> meta = {}) {
    std::string out = "{\n  \"schema\": 1,\n  \"tool\": \"taukit\"";
    for (const auto& [k, v] : meta)
        out += ",\n  \"" + json_escape(k) + "\": \"" + json_escape(v) + "\"";
    VerdictCounts c = count_verdicts(records);
    out += ",\n  \"summary\": {\"pass\": " + std::to_string(c.pass) +
           ", \"fail\": " + std::to_string(c.fail) +
           ", \"inconclusive\": " + std::to_string(c.inconclusive) +
           ", \"vacuous-pass\": " + std::to_string(c.vacuous) + "}";
    out += ",\n  \"records\": [";
    bool first = true;
    for (const auto& r : records) {
        out += first ? "\n" : ",\n";
        first = false;
        out += "    {\"suite\": \"" + json_escape(r.suite) + "\", \"case\": \"" +
               json_escape(r.case_id) + "\", \"inputs\": {";
        bool fi = true;
        for (const auto& [k, v] : r.inputs) {
            if (!fi) out += ", ";
            fi = false;
            out += "\"" + json_escape(k) + "\": \"" + json_escape(v) + "\"";
        }
        out += "}, \"measured\": " + json_number(r.measured) +
               ", \"bound\": " + json_number(r.bound) + ", \"se\": " + json_number(r.se) +
               ", \"verdict\": \"" + std::string(to_string(r.verdict)) +
               "\", \"wall_ms\": " + json_number(r.wall_ms) + "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

inline std::string csv_field(const std::string& s) {
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string render_csv(std::span<const ReportRecord> records) {
    std::string out = "suite,case,inputs,measured,bound,se,verdict,wall_ms\n";
    for (const auto& r : records) {
        std::string inputs;
        for (const auto& [k, v] : r.inputs) {
            if (!inputs.empty()) inputs += "|";
            inputs += k + "=" + v;
        }
        out += csv_field(r.suite) + "," + csv_field(r.case_id) + "," + csv_field(inputs) + "," +
               format_double(r.measured) + "," + format_double(r.bound) + "," +
               format_double(r.se) + "," + std::string(to_string(r.verdict)) + "," +
               format_double(r.wall_ms) + "\n";
    }
    return out;
}

// write-then-rename so readers never observe a partial file
inline void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw TaukitError("write_atomic: cannot open " + tmp);
    std::size_t wrote = std::fwrite(content.data(), 1, content.size(), f);
    bool ok = wrote == content.size() && std::fclose(f) == 0;
    if (!ok) {
        std::remove(tmp.c_str());
        throw TaukitError("write_atomic: short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw TaukitError("write_atomic: cannot rename into " + path);
    }
}

} // namespace taukit
