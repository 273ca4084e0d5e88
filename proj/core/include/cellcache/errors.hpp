#pragma once

#include <stdexcept>
#include <string>

namespace cellcache {

/// Configuration file or parameter error (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidConfig : public ConfigError {
public:
    explicit InvalidConfig(const std::string& what) : ConfigError(what) {}
};

class EigensolverFailure : public std::runtime_error {
public:
    explicit EigensolverFailure(const std::string& what) : std::runtime_error(what) {}
};

class EmptyCacheError : public std::logic_error {
public:
    EmptyCacheError() : std::logic_error("eviction requested on an empty cache") {}
};

class ContentTooLargeError : public std::invalid_argument {
public:
    explicit ContentTooLargeError(const std::string& what) : std::invalid_argument(what) {}
};

class MissingAxisError : public std::runtime_error {
public:
    explicit MissingAxisError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cellcache
