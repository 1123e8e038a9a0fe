#pragma once

#include <stdexcept>
#include <string>

namespace chnls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Grid or field construction with inadmissible sizes.
class GridError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Parameters at which the soliton amplitude parameter q is undefined (p = 2).
class SingularParameterError : public Error {
public:
    using Error::Error;
};

/// Operation requested outside the regime it is defined for (e.g. focusing solitons).
class UnsupportedRegimeError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration; `key()` names the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Non-finite values appeared during time stepping.
class DivergenceError : public Error {
public:
    explicit DivergenceError(double time)
        : Error("non-finite field encountered at t = " + std::to_string(time)), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace chnls
