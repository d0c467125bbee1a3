#pragma once

#include <stdexcept>
#include <string>

namespace netbn {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file or text. Carries the source name and the 1-based
// line number of the offending line (0 when no line applies).
class ParseError : public Error {
public:
    ParseError(std::string source, int line, const std::string& msg)
        : Error(line > 0 ? source + ":" + std::to_string(line) + ": " + msg
                         : source + ": " + msg),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const { return source_; }
    int line() const { return line_; }

private:
    std::string source_;
    int line_;
};

// A domain invariant does not hold (duplicate signature rows, degenerate
// population, unknown event/failure id, backward DAG edge, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A requested computation exceeds a configured size cap.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

}  // namespace netbn
