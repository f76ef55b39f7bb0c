#pragma once

#include <stdexcept>
#include <string>

namespace eisense {

// Broad failure classes. The CLI maps them onto exit codes 2/3/4.
enum class ErrorKind {
    invalid_argument,  // precondition on a value passed to an operation
    config,            // malformed or unknown configuration
    data,              // malformed input file or dataset
    numerical,         // singular combination, non-convergence, degenerate fit
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool ok, const char* what, ErrorKind kind = ErrorKind::invalid_argument) {
    if (!ok) fail(kind, what);
}

inline void require(bool ok, const std::string& what, ErrorKind kind = ErrorKind::invalid_argument) {
    if (!ok) fail(kind, what);
}

}  // namespace eisense
