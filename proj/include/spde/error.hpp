#pragma once

#include <stdexcept>
#include <string>

namespace spde {

enum class ErrorKind {
    Configuration,  // invalid parameters, stability/CFL violations
    Domain,         // argument outside the mathematical domain of an operation
    Unsupported,    // request outside what an operation implements
    Io,
};

/// Base exception for the library. The CLI maps kinds onto exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Configuration, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class UnsupportedError : public Error {
public:
    explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace spde
