#pragma once

#include <stdexcept>
#include <string>

namespace rr {

enum class ErrorCode {
    // Validation / domain errors.
    TooFewAgents,
    FewerItemsThanAgents,
    DuplicateUtility,
    MalformedInstance,
    SameItemCompared,
    OutOfRange,
    BadRank,
    EmptySet,
    BadNoiseLevel,
    BadFailureBudget,
    BadAdversary,
    OddItemCount,
    UnknownAllocator,
    MissingNoiseConfig,
    MalformedAllocation,
    BadParameter,
    // I/O errors.
    IoError,
    ParseError,
    // Broken internal invariant (a bug, not a user error).
    InternalInvariant,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

    // Process exit code contract: 2 validation, 3 I/O, 4 internal.
    int exit_code() const {
        switch (code_) {
            case ErrorCode::IoError:
            case ErrorCode::ParseError:
                return 3;
            case ErrorCode::InternalInvariant:
                return 4;
            default:
                return 2;
        }
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

}  // namespace rr
