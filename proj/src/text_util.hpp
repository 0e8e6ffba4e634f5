#pragma once

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwvd::detail {

// Full round-trip precision.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& text, const std::string& what) {
    const std::string s = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number for " + what + ": '" + text + "'");
    }
    if (used != s.size()) {
        throw std::invalid_argument("invalid number for " + what + ": '" + text + "'");
    }
    return v;
}

inline std::vector<double> parse_list(const std::string& text, std::size_t expected,
                                      const std::string& what) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_double(part, what));
    if (out.size() != expected) {
        throw std::invalid_argument(what + " expects " + std::to_string(expected) +
                                    " comma-separated values, got '" + text + "'");
    }
    return out;
}

}  // namespace qwvd::detail
