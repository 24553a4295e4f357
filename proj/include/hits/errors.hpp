#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hits {

enum class ErrorCode {
    BadParameter,
    TimestepUnderflow,
    EmptySystem,
    DuplicateId,
    NotActive,
    NonMonotonicTime,
    IncompleteCommit,
    SingularEncounter,
    Io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::TimestepUnderflow: return "TimestepUnderflow";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NotActive: return "NotActive";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::IncompleteCommit: return "IncompleteCommit";
    case ErrorCode::SingularEncounter: return "SingularEncounter";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

//! Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hits
