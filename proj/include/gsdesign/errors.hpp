#ifndef GSDESIGN_ERRORS_HPP
#define GSDESIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gsdesign {

// All errors thrown by the library derive from Error. The CLI maps them to
// exit codes: user-facing input problems exit 2, broken internal invariants
// exit 4.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file contents (descriptor tables, datasets, model files, CSVs).
struct FormatError : Error {
    using Error::Error;
};

// A character outside the alphabet.
struct EncodingError : Error {
    using Error::Error;
};

// A caller violated an operation's precondition.
struct ContractError : Error {
    using Error::Error;
};

// A linear system could not be solved to tolerance.
struct NumericError : Error {
    using Error::Error;
};

// An enumeration or table would exceed a configured cap.
struct ResourceError : Error {
    using Error::Error;
};

// An internal invariant failed; must be unreachable.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace gsdesign

#endif
