#pragma once

#include <stdexcept>
#include <string>

namespace coles {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument or configuration value was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read, written, or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

/// An iterative routine failed to converge or produced non-finite values.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace coles
