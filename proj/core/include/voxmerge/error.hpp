#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace voxmerge {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes, resolutions or channel counts do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar parameter lies outside its admissible range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An operation was called on input that violates its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise unusable numeric data.
class DataError : public Error {
public:
    using Error::Error;
};

/// A JSON document is structurally valid but does not match its schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A synthetic scene or edit pair is inconsistent.
class SceneError : public Error {
public:
    using Error::Error;
};

/// A binary file is malformed. Carries the byte offset where parsing failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace voxmerge
