#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "pcert/cli.hpp"

namespace pcert::detail {

// "key=value key=value ..." on one line.
inline std::map<std::string, std::string> parse_pairs(std::string_view line, std::string_view what)
{
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ConfigError(std::string(what) + ": expected key=value, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return kv;
}

// One key=value per line; '#' comments and blank lines ignored.
inline std::map<std::string, std::string> parse_lines(const std::string& text, std::string_view what)
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(std::string(what) + " line " + std::to_string(n) + ": expected key=value");
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (kv.count(key)) throw ConfigError(std::string(what) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

inline const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key,
                               std::string_view what)
{
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(std::string(what) + ": missing '" + key + "'");
    return it->second;
}

inline long long to_integer(const std::string& s, std::string_view key)
{
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty()) throw ConfigError("'" + std::string(key) + "' is not an integer: '" + s + "'");
    return v;
}

}  // namespace pcert::detail
