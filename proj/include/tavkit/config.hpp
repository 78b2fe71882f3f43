#pragma once

#include <map>
#include <string>
#include <string_view>

#include "tavkit/errors.hpp"

namespace tavkit {

// Flat key=value configuration with dotted keys ("scene.threshold=27").
// '#' starts a comment; blank lines are fine. Flags are layered on top by
// calling set() after load.
class Config {
public:
    Config() = default;

    static Config from_string(std::string_view text);
    static Config load_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value);

    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace tavkit
