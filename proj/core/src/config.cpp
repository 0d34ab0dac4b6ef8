#include "qlab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qlab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (!section.empty()) key = section + "." + key;
        if (cfg.kv_.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        cfg.kv_[key] = value;
    }
    return cfg;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("config: missing required key '" + key + "'");
    consumed_.insert(key);
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_real(const std::string& key) const {
    return parse_real(key, get_string(key));
}

double Config::get_real(const std::string& key, double fallback) const {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : parse_real(key, it->second);
}

int64_t Config::get_int(const std::string& key) const {
    const double v = get_real(key);
    const auto i = static_cast<int64_t>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config key '" + key + "': expected an integer");
    return i;
}

int64_t Config::get_int(const std::string& key, int64_t fallback) const {
    consumed_.insert(key);
    return kv_.count(key) ? get_int(key) : fallback;
}

uint64_t Config::get_seed(const std::string& key, uint64_t fallback) const {
    consumed_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a seed: '" + it->second + "'");
    }
}

std::vector<double> Config::get_list(const std::string& key) const {
    const std::string raw = get_string(key);
    std::vector<double> out;
    std::istringstream in(raw);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_real(key, item));
    }
    if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
    return out;
}

void Config::override_value(const std::string& key, const std::string& value) {
    kv_[key] = value;
}

void Config::check_all_consumed() const {
    std::string unknown;
    for (const auto& [key, value] : kv_) {
        if (!consumed_.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty()) throw ConfigError("config: unknown keys: " + unknown);
}

} // namespace qlab
