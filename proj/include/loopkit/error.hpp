#pragma once

#include <stdexcept>
#include <string>

namespace loopkit {

enum class ErrorKind {
    MalformedInput,
    NotLatin,
    NoNeutral,
    NoInverse,
    RequirementMissing,
    NotPowerAssociative,
    PreconditionFailed,
    NotNormal,
    NotTS,
    NotSteiner,
    BadBase,
    SpecInvalid,
};

const char * to_string(ErrorKind kind);

class LoopError : public std::runtime_error {
public:
    LoopError(ErrorKind kind, const std::string & message) :
        std::runtime_error(std::string(to_string(kind)) + ": " + message),
        _kind(kind)
    {
    }

    ErrorKind kind() const noexcept { return _kind; }

private:
    ErrorKind _kind;
};

} // namespace loopkit
