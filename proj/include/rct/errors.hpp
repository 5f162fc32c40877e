#pragma once

#include <stdexcept>
#include <string>

namespace rct {

/// Base class for all tracker errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A required file or directory does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Malformed input data (ground-truth lines, config files, image streams).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Dimension mismatch or degenerate geometry.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or other numeric breakdowns.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace rct
