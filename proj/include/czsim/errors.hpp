#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace czsim {

// Every error raised by the library derives from Error so callers (the CLI,
// the sweep harness) can catch one type and still report the specific kind.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Dressed-state identification is meaningless: the best overlap of some
// eigenvector with its assigned bare state fell below the threshold.
class AmbiguousLabeling : public Error {
public:
    AmbiguousLabeling(const std::string& what, std::vector<std::string> labels)
        : Error(what), labels_(std::move(labels)) {}
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    std::vector<std::string> labels_;
};

// A closed-form expression hit a vanishing denominator.
class SingularConfiguration : public Error {
public:
    using Error::Error;
};

class IntegrationFailure : public Error {
public:
    using Error::Error;
};

// A computational state did not return, so its accumulated phase is undefined.
class PhaseUndefined : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string key, int line)
        : Error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

}  // namespace czsim
