#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qlab/errors.hpp"

namespace qlab {

// Flat key/value experiment configuration. Lines are `key = value`; `#`
// starts a comment; an optional `[section]` header prefixes following keys
// with `section.`. Unknown (never consumed) keys are reported as errors so
// that typos do not silently change an experiment.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_real(const std::string& key) const;
    double get_real(const std::string& key, double fallback) const;
    int64_t get_int(const std::string& key) const;
    int64_t get_int(const std::string& key, int64_t fallback) const;
    uint64_t get_seed(const std::string& key, uint64_t fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    void override_value(const std::string& key, const std::string& value);

    // Throws ConfigError naming every key that was never consumed.
    void check_all_consumed() const;

private:
    std::map<std::string, std::string> kv_;
    mutable std::set<std::string> consumed_;
};

} // namespace qlab
