#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frul {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Violated argument contract (bad kernel size, shape mismatch, index out of range).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Bad experiment configuration (unknown key, out-of-grid value, missing field).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Missing or unreadable data file.
class DataError : public Error {
public:
    using Error::Error;
};

// Training produced a non-finite value; message names the batch/round.
class NumericError : public Error {
public:
    using Error::Error;
};

// Weight-stream decoding failure, by kind.
class SerializeError : public Error {
public:
    enum class Kind { BadMagic, BadVersion, Truncated, Inconsistent };

    SerializeError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace frul
