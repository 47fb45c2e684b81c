#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sos {

// Flat key = value configuration with optional [section] headers; keys inside
// a section are addressed as "section.key".  '#' and ';' start comments.
class ConfigMap {
public:
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // comma- or space-separated list of integers
    std::vector<long> get_long_list(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

    // FNV-1a over the canonical "key = value" lines, as a hex string
    std::string hash() const;

private:
    std::map<std::string, std::string> values_;
};

// Parse errors carry 1-based line numbers in the exception message.
ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

} // namespace sos
