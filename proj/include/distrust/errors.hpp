#pragma once

#include <stdexcept>
#include <string>

namespace distrust {

// Problems with user-supplied data files (CSV contents, model containers).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Problems with parameters, flags, or configuration values.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace distrust
