#pragma once

#include <stdexcept>
#include <string>

namespace mcfix {

// Malformed input document or construction data. CLI exit code 3.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A theorem hypothesis does not hold (finite group, positive grading,
// connectivity bound). CLI exit code 4.
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& hypothesis)
        : std::runtime_error("hypothesis violated: " + hypothesis) {}
};

// Requested enumeration exceeds the configured budget. CLI exit code 5.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency failure: the input data violates a structural
// invariant (d^2 != 0, broken action, non-closing bracket).
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mcfix
