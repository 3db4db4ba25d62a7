#pragma once

#include <stdexcept>
#include <string>

namespace hirz {

class SurfaceMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Enlarging the Čech truncation box changed a computed dimension.
class TruncationUnstable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidCocycle : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InconsistentOracle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionViolated : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotNormalizable : public std::runtime_error {
public:
    enum class Cause {
        ProvablyNone,  // no twist exists anywhere in the lattice
        BoxExhausted,  // solutions exist (or may exist) only outside the search box
    };

    NotNormalizable(Cause cause, const std::string& what)
        : std::runtime_error(what), cause_(cause) {}

    Cause cause() const noexcept { return cause_; }

private:
    Cause cause_;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace hirz
