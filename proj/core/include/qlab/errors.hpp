#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Grid cannot represent (or exactly integrate) the requested frequency content.
class BandwidthError : public std::runtime_error {
public:
    explicit BandwidthError(const std::string& what) : std::runtime_error(what) {}
};

// Mode count / convolution support would exceed a configured cap.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Two fields from different models were combined.
class ModelMismatchError : public std::invalid_argument {
public:
    explicit ModelMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad experiment configuration (unknown key, missing key, malformed value).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qlab
