#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tavkit {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input (bad signature, bad header field, inconsistent files).
class FormatError : public Error {
public:
    using Error::Error;
};

// Input is well-formed but uses a feature we do not handle.
class UnsupportedFormatError : public Error {
public:
    using Error::Error;
};

// Stream broke mid-frame; carries the index of the frame being read.
class CorruptStreamError : public Error {
public:
    CorruptStreamError(const std::string& msg, long frame_index)
        : Error(msg + " (frame " + std::to_string(frame_index) + ")"),
          frame_index_(frame_index) {}

    long frame_index() const { return frame_index_; }

private:
    long frame_index_;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

// A command template is missing a required placeholder.
class TemplateError : public Error {
public:
    TemplateError(const std::string& msg, std::string placeholder)
        : Error(msg), placeholder_(std::move(placeholder)) {}

    const std::string& placeholder() const { return placeholder_; }

private:
    std::string placeholder_;
};

// Text that could not be parsed; byte_offset is 0-based.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t byte_offset)
        : Error(msg), byte_offset_(byte_offset) {}

    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

// Well-formed JSON with the wrong shape; record_index is 0-based.
class SchemaError : public Error {
public:
    SchemaError(const std::string& msg, std::size_t record_index)
        : Error(msg), record_index_(record_index) {}

    std::size_t record_index() const { return record_index_; }

private:
    std::size_t record_index_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace tavkit
