#pragma once

#include <stdexcept>
#include <string>

namespace lexproj {

// Input data failed schema or range validation. CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (bad row, unparseable number). CLI exit code 1.
class ParseError : public ValidationError {
public:
    explicit ParseError(const std::string& msg) : ValidationError(msg) {}
};

// Numerical failure (non-finite log density, degenerate fit). CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lexproj
