#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wolst {

enum class ErrorCode {
    NotPrime,
    ExponentOutOfRange,
    WidthExceeded,
    NotInvertible,
    DenominatorNotCoprime,
    ModulusMismatch,
    NMaxTooLarge,
    DivisionNotExact,
    IndexTooLarge,
    OddIndex,
    IrregularPosition,
    NoValidTarget,
    RangeError,
    RangeTooLarge,
    UnknownCheck,
    PreconditionFailed,
    UsageError,
};

std::string_view to_string(ErrorCode code);

/// Thrown by every library operation that rejects its input.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

    ErrorCode code() const noexcept { return code_; }
    /// Offending element for batch operations.
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::WidthExceeded: return "WidthExceeded";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DenominatorNotCoprime: return "DenominatorNotCoprime";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::NMaxTooLarge: return "NMaxTooLarge";
    case ErrorCode::DivisionNotExact: return "DivisionNotExact";
    case ErrorCode::IndexTooLarge: return "IndexTooLarge";
    case ErrorCode::OddIndex: return "OddIndex";
    case ErrorCode::IrregularPosition: return "IrregularPosition";
    case ErrorCode::NoValidTarget: return "NoValidTarget";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

} // namespace wolst
