#include "fracfisher/reports.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <system_error>

namespace fracfisher {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string escape_json(const std::string& s) {
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
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

bool RunReport::all_passed() const {
    for (const auto& c : contracts) {
        if (!c.passed) return false;
    }
    return true;
}

std::string RunReport::to_json() const {
    std::string s = "{";
    s += "\"command\":\"" + escape_json(command) + "\"";
    s += ",\"contracts\":[";
    for (std::size_t i = 0; i < contracts.size(); ++i) {
        const auto& c = contracts[i];
        if (i) s += ',';
        s += "{\"lhs\":" + format_double(c.lhs);
        s += ",\"name\":\"" + escape_json(c.name) + "\"";
        s += std::string(",\"passed\":") + (c.passed ? "true" : "false");
        s += ",\"rhs\":" + format_double(c.rhs);
        s += ",\"tolerance\":" + format_double(c.tolerance);
        s += "}";
    }
    s += "],\"numbers\":{";
    bool first = true;
    for (const auto& [k, v] : numbers) {
        if (!first) s += ',';
        first = false;
        s += "\"" + escape_json(k) + "\":" + format_double(v);
    }
    s += "},\"strings\":{";
    first = true;
    for (const auto& [k, v] : strings) {
        if (!first) s += ',';
        first = false;
        s += "\"" + escape_json(k) + "\":\"" + escape_json(v) + "\"";
    }
    s += "}}";
    return s;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    std::FILE* fp = std::fopen(tmp.c_str(), "wb");
    if (!fp) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
    const std::size_t written = std::fwrite(content.data(), 1, content.size(), fp);
    const bool flush_ok = std::fflush(fp) == 0;
    const bool close_ok = std::fclose(fp) == 0;
    if (written != content.size() || !flush_ok || !close_ok) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("write_file_atomic: short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("write_file_atomic: cannot rename onto " + path);
    }
}

}  // namespace fracfisher
