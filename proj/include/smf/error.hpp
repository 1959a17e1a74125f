#pragma once

#include <stdexcept>
#include <string>

namespace smf {

/// Base class for every error raised by the framework.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A call violated an operation precondition (bounds, lengths, arity, ...).
struct PreconditionError : Error {
    using Error::Error;
};

/// Configuration text could not be parsed or instantiated.
/// `line` is 1-based; 0 when the error is not tied to a source line.
struct ConfigError : Error {
    int line = 0;
    explicit ConfigError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

/// Problems with user-supplied data: dataset files, unknown ids, snapshots.
struct DataError : Error {
    using Error::Error;
};

} // namespace smf
