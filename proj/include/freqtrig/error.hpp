#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace freqtrig {

enum class ErrorKind {
    InvalidInput,
    InvalidArgument,
    Io,
    Parse,
};

const char* to_string(ErrorKind kind);

/// Base of every error thrown by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& message) : Error(ErrorKind::InvalidInput, message) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& message) : Error(ErrorKind::InvalidArgument, message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ErrorKind::Io, message) {}
};

/// Malformed file content. `offset` is the byte position where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::uint64_t offset)
        : Error(ErrorKind::Parse, message + " (at byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

}  // namespace freqtrig
