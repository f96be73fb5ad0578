#pragma once

#include <stdexcept>
#include <string>

namespace taylor {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
    sample,        // empty sample, infeasible alignment, subsample too small
    domain,        // argument outside the function's domain
    collinearity,  // rank-deficient design or instrument matrix
    identification,  // fewer instruments than parameters
    restriction,   // malformed or rank-deficient Wald restriction
    parse,         // unreadable input text
    fetch,         // remote retrieval failed with no cache to fall back on
    decode,        // response body did not match the expected schema
    config,        // missing or inconsistent configuration
    schema,        // golden-table label not resolvable
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace taylor
