#pragma once

#include <stdexcept>
#include <string>

namespace aggmet {

// Base class for every failure the pipeline surfaces to callers.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Lexing / segmentation / CFG failure tied to a source location.
class ExtractError : public Error {
public:
    ExtractError(std::string file, int line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace aggmet
