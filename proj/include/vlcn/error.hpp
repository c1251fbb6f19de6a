#pragma once

#include <stdexcept>
#include <string>

namespace vlcn {

/// Input file could not be parsed (bad header, malformed row, truncated blob).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on argument values or shapes was violated.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative numerical routine failed to converge or produced non-finite values.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vlcn
