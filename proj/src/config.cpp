#include "tavkit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tavkit {
namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

Config Config::from_string(std::string_view text) {
    Config cfg;
    std::size_t offset = 0;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t nl = text.find('\n', line_start);
        std::string_view line = text.substr(
            line_start, nl == std::string_view::npos ? text.size() - line_start
                                                     : nl - line_start);
        offset = line_start;
        line_start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line has no '=': \"" + stripped + "\"", offset);
        std::string key = trim(std::string_view(stripped).substr(0, eq));
        if (key.empty())
            throw ParseError("config line has empty key", offset);
        cfg.values_[key] = trim(std::string_view(stripped).substr(eq + 1));
    }
    return cfg;
}

Config Config::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return from_string(os.str());
}

void Config::set(const std::string& key, std::string value) {
    values_[key] = std::move(value);
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    char* end = nullptr;
    double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw ArgumentError("config key " + key + " is not a number: \"" +
                            it->second + "\"");
    return v;
}

long Config::get_long(const std::string& key, long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    char* end = nullptr;
    long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0')
        throw ArgumentError("config key " + key + " is not an integer: \"" +
                            it->second + "\"");
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw ArgumentError("config key " + key + " is not a boolean: \"" + v + "\"");
}

} // namespace tavkit
