#pragma once

#include <stdexcept>
#include <string>

namespace semiample {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: wrong lengths, bad indices, schema violations. CLI exit 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A mathematical precondition of an operation does not hold. CLI exit 2.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, std::string anchor = {})
        : Error(what), anchor_(std::move(anchor)) {}
    const std::string& anchor() const { return anchor_; }

private:
    std::string anchor_;
};

class NotCartierError : public PreconditionError {
public:
    explicit NotCartierError(const std::string& what)
        : PreconditionError("not Cartier: " + what, "support function of a Cartier divisor") {}
};

// Two independent computations disagreed, or an internal invariant broke.
class InconsistencyError : public Error {
public:
    explicit InconsistencyError(const std::string& what)
        : Error("internal inconsistency: " + what) {}
};

}  // namespace semiample
